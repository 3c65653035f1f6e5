#include "corewalk/report.hpp"

#include <charconv>
#include <ostream>

#include "json.hpp"

namespace corewalk {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_report_csv(std::span<const ExperimentReport> reports,
                      std::ostream& out) {
  out << "method,fraction,repeat,f1,decomp_s,embed_s,prop_s,total_s\n";
  auto row = [&](const std::string& method, double fraction,
                 const std::string& repeat, double f1,
                 const TimingBreakdown& t) {
    out << method << ',' << format_number(fraction) << ',' << repeat << ','
        << format_number(f1) << ',' << format_number(t.core_decomposition_s)
        << ',' << format_number(t.embedding_s) << ','
        << format_number(t.propagation_s) << ',' << format_number(t.total_s)
        << '\n';
  };
  for (const auto& rep : reports) {
    for (std::size_t r = 0; r < rep.per_repeat.size(); ++r) {
      row(rep.method, rep.fraction, std::to_string(r),
          rep.per_repeat[r].f1_percent, rep.per_repeat[r].timing);
    }
    row(rep.method, rep.fraction, "mean", rep.f1_mean, rep.timing_mean);
    TimingBreakdown std_t = rep.timing_std;
    row(rep.method, rep.fraction, "std", rep.f1_std, std_t);
  }
}

void write_sweep_csv(std::span<const ExperimentReport> reports,
                     std::ostream& out) {
  out << "method,k0,fraction,f1_mean,f1_std,decomp_s,embed_s,prop_s,total_s,"
         "speedup\n";
  for (const auto& rep : reports) {
    out << rep.method << ',';
    if (rep.k0 > 0) out << rep.k0;
    out << ',' << format_number(rep.fraction) << ','
        << format_number(rep.f1_mean) << ',' << format_number(rep.f1_std)
        << ',' << format_number(rep.timing_mean.core_decomposition_s) << ','
        << format_number(rep.timing_mean.embedding_s) << ','
        << format_number(rep.timing_mean.propagation_s) << ','
        << format_number(rep.timing_mean.total_s) << ',';
    if (rep.has_baseline && rep.speedup > 0) out << format_number(rep.speedup);
    out << '\n';
  }
}

void write_timing_json(const TimingBreakdown& timing, std::ostream& out) {
  nlohmann::json j;
  j["core_decomposition_s"] = timing.core_decomposition_s;
  j["embedding_s"] = timing.embedding_s;
  j["propagation_s"] = timing.propagation_s;
  j["total_s"] = timing.total_s;
  out << j.dump(2) << '\n';
}

void write_graph_stats_json(const Graph& built, const BuildStats& stats,
                            std::size_t components, const Graph& lcc,
                            std::ostream& out) {
  nlohmann::json j;
  j["nodes"] = built.num_nodes();
  j["edges"] = built.num_edges();
  j["self_loops_removed"] = stats.self_loops_removed;
  j["duplicates_removed"] = stats.duplicates_removed;
  j["components"] = components;
  j["lcc_nodes"] = lcc.num_nodes();
  j["lcc_edges"] = lcc.num_edges();
  out << j.dump(2) << '\n';
}

}  // namespace corewalk

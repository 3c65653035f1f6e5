#include "corewalk/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace corewalk {

LogLevel log_level() {
  static const LogLevel lvl = [] {
    const char* e = std::getenv("COREWALK_LOG");
    if (e == nullptr) return LogLevel::kWarn;
    if (std::strcmp(e, "error") == 0) return LogLevel::kError;
    if (std::strcmp(e, "warn") == 0) return LogLevel::kWarn;
    if (std::strcmp(e, "info") == 0) return LogLevel::kInfo;
    if (std::strcmp(e, "debug") == 0) return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return lvl;
}

namespace {

void vlog(LogLevel lvl, const char* tag, const char* fmt, va_list ap) {
  if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
  std::fprintf(stderr, "[%s] ", tag);
  std::vfprintf(stderr, fmt, ap);
  std::fputc('\n', stderr);
}

}  // namespace

void log_error(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  vlog(LogLevel::kError, "error", fmt, ap);
  va_end(ap);
}

void log_warn(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  vlog(LogLevel::kWarn, "warn", fmt, ap);
  va_end(ap);
}

void log_info(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  vlog(LogLevel::kInfo, "info", fmt, ap);
  va_end(ap);
}

void log_debug(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  vlog(LogLevel::kDebug, "debug", fmt, ap);
  va_end(ap);
}

}  // namespace corewalk

#pragma once

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irisattn/common/error.hpp"

namespace irisattn::experiment {

class LogIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only, line-delimited JSON event log.
///
/// Each record is written with a single write() on an O_APPEND descriptor
/// and synced before append() returns, so a record is either wholly present
/// or, after a crash mid-write, a torn final line without a newline. Readers
/// skip such a line, and opening the log truncates it away before any new
/// append can be glued onto it.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path, bool sync = true) : path_(std::move(path)), sync_(sync) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    repair_torn_tail();
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw LogIoError("cannot open event log " + path_.string() + ": " + std::strerror(errno));
  }

  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  ~EventLog() {
    if (fd_ >= 0) ::close(fd_);
  }

  void append(const nlohmann::json& record) {
    const std::string line = record.dump() + '\n';
    std::lock_guard lock(mu_);
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw LogIoError(std::string("event log write failed: ") + std::strerror(errno));
      }
      written += static_cast<std::size_t>(n);
    }
    if (sync_ && ::fdatasync(fd_) != 0) throw LogIoError(std::string("event log sync failed: ") + std::strerror(errno));
  }

  const std::filesystem::path& path() const noexcept { return path_; }

  /// All complete records currently in the file, in append order.
  std::vector<nlohmann::json> read_all() const { return read_records(path_); }

  static std::vector<nlohmann::json> read_records(const std::filesystem::path& path) {
    std::vector<nlohmann::json> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (true) {
      const auto nl = text.find('\n', pos);
      if (nl == std::string::npos) break;
      ++line_no;
      const std::string_view line(text.data() + pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      try {
        out.push_back(nlohmann::json::parse(line));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_no, std::string("event log: ") + e.what());
      }
    }
    return out;
  }

 private:
  void repair_torn_tail() {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) return;
    std::ifstream in(path_, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty() || text.back() == '\n') return;
    const auto last_nl = text.rfind('\n');
    const std::uintmax_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
    std::filesystem::resize_file(path_, keep);
  }

  std::filesystem::path path_;
  bool sync_;
  int fd_ = -1;
  std::mutex mu_;
};

}  // namespace irisattn::experiment

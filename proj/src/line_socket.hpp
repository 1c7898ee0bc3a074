#pragma once

// Blocking stream socket carrying newline-terminated messages.

#include <chrono>
#include <string>

namespace factcheck::net {

class LineSocket {
 public:
  LineSocket() = default;
  explicit LineSocket(int fd) : fd_(fd) {}
  ~LineSocket();

  LineSocket(LineSocket&& other) noexcept;
  LineSocket& operator=(LineSocket&& other) noexcept;
  LineSocket(const LineSocket&) = delete;
  LineSocket& operator=(const LineSocket&) = delete;

  // `host:port` or `unix:/path`. Throws TransportError.
  static LineSocket connect(const std::string& address, std::chrono::milliseconds timeout);

  // Appends '\n'. Throws TransportError.
  void send_line(const std::string& line);

  // Reads through the next '\n' (excluded). Throws TransportError on EOF,
  // timeout or error.
  std::string read_line();

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace factcheck::net

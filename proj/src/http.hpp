#pragma once

// Thin synchronous HTTP client over cpp-httplib. Only this translation unit
// pulls in httplib for the library.

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace factcheck::http {

struct Response {
  int status = 0;
  std::string body;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // begins with '/', may be just "/"
};

// Throws ConfigError when `url` is not http(s)://host[:port][/path].
Url parse_url(const std::string& url);

// Throws TransportError when no response was received (connect failure,
// timeout, TLS failure).
Response get(const Url& url, const std::string& path_and_query, const Headers& headers,
             std::chrono::milliseconds timeout);
Response post(const Url& url, const std::string& path, const std::string& body,
              const std::string& content_type, const Headers& headers,
              std::chrono::milliseconds timeout);

}  // namespace factcheck::http

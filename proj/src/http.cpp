#include "http.hpp"

#include <httplib.h>

#include "factcheck/error.hpp"

namespace factcheck::http {

namespace {

httplib::Client make_client(const Url& url, std::chrono::milliseconds timeout) {
  httplib::Client client(url.origin);
  const auto secs = static_cast<time_t>(timeout.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  client.set_follow_location(true);
  return client;
}

httplib::Headers to_httplib(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

Response finish(const httplib::Result& result, const Url& url) {
  if (!result) {
    throw TransportError("HTTP request to " + url.origin + " failed: " +
                         httplib::to_string(result.error()));
  }
  return {result->status, result->body};
}

}  // namespace

Url parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("URL without scheme: '" + url + "'");
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported URL scheme '" + scheme + "' in '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Url out;
  if (path_start == std::string::npos) {
    out.origin = url;
    out.path = "/";
  } else {
    out.origin = url.substr(0, path_start);
    out.path = url.substr(path_start);
  }
  if (out.origin.size() == scheme_end + 3) throw ConfigError("URL without host: '" + url + "'");
  return out;
}

Response get(const Url& url, const std::string& path_and_query, const Headers& headers,
             std::chrono::milliseconds timeout) {
  auto client = make_client(url, timeout);
  return finish(client.Get(path_and_query, to_httplib(headers)), url);
}

Response post(const Url& url, const std::string& path, const std::string& body,
              const std::string& content_type, const Headers& headers,
              std::chrono::milliseconds timeout) {
  auto client = make_client(url, timeout);
  return finish(client.Post(path, to_httplib(headers), body, content_type), url);
}

}  // namespace factcheck::http

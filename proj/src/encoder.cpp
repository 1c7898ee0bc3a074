#include "factcheck/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "json.hpp"

#include "factcheck/error.hpp"
#include "line_socket.hpp"
#include "text_util.hpp"

namespace factcheck {

namespace {

constexpr std::uint64_t kTrigramSeed = 0x5eed0f7a11bac4ULL;

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void check_texts(std::span<const std::string> texts) {
  if (texts.empty()) throw DomainError("encode: empty batch");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (text_util::trim(texts[i]).empty()) {
      throw DomainError("encode: text " + std::to_string(i) + " is empty");
    }
  }
}

}  // namespace

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("embedding must have positive dimension");
  bool nonzero = false;
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("embedding contains a non-finite value");
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw DomainError("zero embedding");
}

double Embedding::norm() const { return std::sqrt(dot(values_, values_)); }

Embedding Embedding::normalized() const {
  const double n = norm();
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] / n;
  return Embedding(std::move(out));
}

double cosine(const Embedding& u, const Embedding& v) {
  if (u.dimension() != v.dimension()) {
    throw DomainError("cosine: dimension mismatch (" + std::to_string(u.dimension()) + " vs " +
                      std::to_string(v.dimension()) + ")");
  }
  const double c = dot(u.values(), v.values()) / (u.norm() * v.norm());
  return std::clamp(c, -1.0, 1.0);
}

FallbackEncoder::FallbackEncoder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw DomainError("encoder dimension must be positive");
}

std::string FallbackEncoder::model_name() const {
  return "fallback-char-trigram-" + std::to_string(dimension_);
}

std::size_t FallbackEncoder::bucket_of(std::string_view gram) const {
  return static_cast<std::size_t>(text_util::fnv1a64(gram, kTrigramSeed) % dimension_);
}

std::vector<Embedding> FallbackEncoder::encode(std::span<const std::string> texts) const {
  check_texts(texts);
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    const std::string lowered = text_util::to_lower_ascii(text);
    const auto units = text_util::utf8_units(lowered);
    std::vector<double> counts(dimension_, 0.0);
    if (units.size() < 3) {
      counts[bucket_of(lowered)] += 1.0;
    } else {
      for (std::size_t i = 0; i + 3 <= units.size(); ++i) {
        const char* begin = units[i].data();
        const char* end = units[i + 2].data() + units[i + 2].size();
        counts[bucket_of(std::string_view(begin, static_cast<std::size_t>(end - begin)))] += 1.0;
      }
    }
    out.push_back(Embedding(std::move(counts)).normalized());
  }
  return out;
}

struct SidecarEncoder::Connection {
  std::string address;
  net::LineSocket socket;
  std::mutex mutex;
  std::int64_t next_id = 1;
};

SidecarEncoder::SidecarEncoder(std::string address, std::chrono::milliseconds timeout)
    : conn_(std::make_unique<Connection>()) {
  conn_->address = address;
  try {
    conn_->socket = net::LineSocket::connect(address, timeout);
    conn_->socket.send_line(R"({"op":"hello"})");
    const auto reply = nlohmann::json::parse(conn_->socket.read_line());
    model_ = reply.at("model").get<std::string>();
    const auto dim = reply.at("dim").get<std::int64_t>();
    if (dim <= 0) throw ProtocolError("sidecar reported non-positive dimension");
    dimension_ = static_cast<std::size_t>(dim);
  } catch (const TransportError& e) {
    throw TransportError(std::string("encoder sidecar at ") + address + " unreachable (" +
                         e.what() + "); use the fallback encoder (--encoder fallback) instead");
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed sidecar handshake: ") + e.what());
  }
}

SidecarEncoder::~SidecarEncoder() = default;

std::vector<Embedding> SidecarEncoder::encode(std::span<const std::string> texts) const {
  check_texts(texts);
  std::lock_guard lock(conn_->mutex);
  const std::int64_t id = conn_->next_id++;
  nlohmann::json request{{"id", id}, {"texts", std::vector<std::string>(texts.begin(), texts.end())}};
  std::string line;
  try {
    conn_->socket.send_line(request.dump());
    line = conn_->socket.read_line();
  } catch (const TransportError& e) {
    throw TransportError(std::string("encoder sidecar at ") + conn_->address + ": " + e.what() +
                         "; use the fallback encoder (--encoder fallback) instead");
  }
  try {
    const auto reply = nlohmann::json::parse(line);
    if (reply.at("id").get<std::int64_t>() != id) throw ProtocolError("sidecar reply id mismatch");
    if (reply.contains("error")) {
      throw ProtocolError("sidecar error: " + reply.at("error").get<std::string>());
    }
    const auto& vectors = reply.at("vectors");
    if (vectors.size() != texts.size()) {
      throw ProtocolError("sidecar returned " + std::to_string(vectors.size()) + " vectors for " +
                          std::to_string(texts.size()) + " texts");
    }
    std::vector<Embedding> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
      auto values = v.get<std::vector<double>>();
      if (values.size() != dimension_) throw ProtocolError("sidecar vector has wrong dimension");
      try {
        out.push_back(Embedding(std::move(values)).normalized());
      } catch (const DomainError& e) {
        throw ProtocolError(std::string("sidecar vector rejected: ") + e.what());
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed sidecar reply: ") + e.what());
  }
}

EncoderHandle::EncoderHandle(std::shared_ptr<const Encoder> encoder) : encoder_(std::move(encoder)) {
  if (!encoder_) throw DomainError("null encoder");
}

std::vector<Embedding> EncoderHandle::encode(std::span<const std::string> texts) const {
  auto out = encoder_->encode(texts);
  for (const auto& e : out) {
    if (e.dimension() != encoder_->dimension()) {
      throw ProtocolError("encoder produced an embedding of unexpected dimension");
    }
  }
  return out;
}

EncoderHandle make_fallback_encoder(std::size_t dimension) {
  return EncoderHandle(std::make_shared<FallbackEncoder>(dimension));
}

EncoderHandle connect_sidecar(const std::string& address, std::chrono::milliseconds timeout) {
  return EncoderHandle(std::make_shared<SidecarEncoder>(address, timeout));
}

}  // namespace factcheck

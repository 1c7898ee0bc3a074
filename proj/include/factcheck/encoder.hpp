#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace factcheck {

inline constexpr std::size_t kDefaultDimension = 384;

// A finite, non-zero real vector.
class Embedding {
 public:
  // Throws DomainError for empty, non-finite or all-zero input.
  explicit Embedding(std::vector<double> values);

  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double norm() const;
  Embedding normalized() const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Throws DomainError when the
// dimensions differ. Symmetric bit-for-bit.
double cosine(const Embedding& u, const Embedding& v);

enum class EncoderBackend { kFallback, kSidecar };

class Encoder {
 public:
  virtual ~Encoder() = default;
  // One unit-norm embedding per text, in order. Throws DomainError on an
  // empty batch or a text that is blank after trimming.
  virtual std::vector<Embedding> encode(std::span<const std::string> texts) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::string model_name() const = 0;
  virtual EncoderBackend backend() const = 0;
};

// Hashed character-trigram counts (lowercased, FNV-1a into `dimension`
// buckets), L2-normalized. Texts shorter than three characters hash as one
// gram. Deterministic across runs and platforms.
class FallbackEncoder final : public Encoder {
 public:
  explicit FallbackEncoder(std::size_t dimension = kDefaultDimension);

  std::vector<Embedding> encode(std::span<const std::string> texts) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string model_name() const override;
  EncoderBackend backend() const override { return EncoderBackend::kFallback; }

  // Bucket a gram hashes to; exposed for tests.
  std::size_t bucket_of(std::string_view gram) const;

 private:
  std::size_t dimension_;
};

// Client of the line-delimited JSON embedding service. `address` is
// `host:port` or `unix:/path/to/socket`. The constructor connects and
// performs the hello handshake; one request is in flight at a time.
class SidecarEncoder final : public Encoder {
 public:
  explicit SidecarEncoder(std::string address,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~SidecarEncoder() override;

  SidecarEncoder(const SidecarEncoder&) = delete;
  SidecarEncoder& operator=(const SidecarEncoder&) = delete;

  std::vector<Embedding> encode(std::span<const std::string> texts) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string model_name() const override { return model_; }
  EncoderBackend backend() const override { return EncoderBackend::kSidecar; }

 private:
  struct Connection;
  std::unique_ptr<Connection> conn_;
  std::string model_;
  std::size_t dimension_ = 0;
};

// Shared, immutable encoder reference passed around the pipeline.
class EncoderHandle {
 public:
  explicit EncoderHandle(std::shared_ptr<const Encoder> encoder);

  EncoderBackend backend() const { return encoder_->backend(); }
  std::size_t dimension() const { return encoder_->dimension(); }
  std::string model_name() const { return encoder_->model_name(); }
  std::vector<Embedding> encode(std::span<const std::string> texts) const;

 private:
  std::shared_ptr<const Encoder> encoder_;
};

EncoderHandle make_fallback_encoder(std::size_t dimension = kDefaultDimension);
EncoderHandle connect_sidecar(const std::string& address,
                              std::chrono::milliseconds timeout = std::chrono::seconds(30));

}  // namespace factcheck

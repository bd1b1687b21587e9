#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trse {

using Bytes = std::vector<uint8_t>;

// Raised for malformed, truncated, or out-of-range serialized input.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ToHex(std::span<const uint8_t> data);
Bytes FromHex(std::string_view hex);

Bytes ToBytes(std::string_view s);

void XorInto(std::span<uint8_t> dst, std::span<const uint8_t> src);

// Big-endian append-only serializer.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void Raw(std::span<const uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }
  // 2-byte length prefix.
  void Sized16(std::span<const uint8_t> data);
  void String16(std::string_view s);

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked big-endian reader; every short read throws DecodeError.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t U8();
  uint16_t U16();
  uint32_t U32();
  std::span<const uint8_t> Raw(size_t len);
  std::span<const uint8_t> Sized16();
  std::string String16();

  size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }
  void ExpectDone(const char* what) const;

 private:
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace trse

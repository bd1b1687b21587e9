#include "trse/bytes.hpp"

#include <algorithm>

namespace trse {

std::string ToHex(std::span<const uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

namespace {

int HexNibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw DecodeError("hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    const int hi = HexNibble(hex[2 * i]);
    const int lo = HexNibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw DecodeError("invalid hex digit");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

void XorInto(std::span<uint8_t> dst, std::span<const uint8_t> src) {
  if (dst.size() != src.size()) {
    throw std::invalid_argument("XorInto length mismatch");
  }
  for (size_t i = 0; i < dst.size(); ++i) {
    dst[i] ^= src[i];
  }
}

void ByteWriter::U16(uint16_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::U32(uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void ByteWriter::Sized16(std::span<const uint8_t> data) {
  if (data.size() > 0xFFFF) {
    throw std::invalid_argument("field exceeds 16-bit length prefix");
  }
  U16(static_cast<uint16_t>(data.size()));
  Raw(data);
}

void ByteWriter::String16(std::string_view s) {
  Sized16(std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

uint8_t ByteReader::U8() { return Raw(1)[0]; }

uint16_t ByteReader::U16() {
  const auto b = Raw(2);
  return static_cast<uint16_t>((b[0] << 8) | b[1]);
}

uint32_t ByteReader::U32() {
  const auto b = Raw(4);
  return (static_cast<uint32_t>(b[0]) << 24) | (static_cast<uint32_t>(b[1]) << 16) |
         (static_cast<uint32_t>(b[2]) << 8) | static_cast<uint32_t>(b[3]);
}

std::span<const uint8_t> ByteReader::Raw(size_t len) {
  if (len > remaining()) {
    throw DecodeError("unexpected end of input");
  }
  auto out = in_.subspan(pos_, len);
  pos_ += len;
  return out;
}

std::span<const uint8_t> ByteReader::Sized16() { return Raw(U16()); }

std::string ByteReader::String16() {
  const auto b = Sized16();
  return std::string(b.begin(), b.end());
}

void ByteReader::ExpectDone(const char* what) const {
  if (!done()) {
    throw DecodeError(std::string("trailing bytes after ") + what);
  }
}

}  // namespace trse

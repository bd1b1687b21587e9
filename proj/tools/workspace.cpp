#include "workspace.hpp"

#include <fstream>
#include <sstream>

#include "trse/hash.hpp"
#include "trse/wire.hpp"

namespace trse::cli {

std::string Armor(std::string_view type, std::string_view params_hash,
                  std::span<const uint8_t> body) {
  std::string out = "trse " + std::string(type) + " " + std::string(params_hash) + "\n";
  const std::string hex = ToHex(body);
  for (size_t i = 0; i < hex.size(); i += 64) {
    out += hex.substr(i, 64);
    out += '\n';
  }
  return out;
}

Armored Unarmor(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  Armored a;
  std::string header;
  if (!std::getline(in, header)) throw DecodeError("empty armored file");
  std::istringstream h(header);
  std::string extra;
  if (!(h >> magic >> a.type >> a.params_hash) || magic != "trse" || (h >> extra)) {
    throw DecodeError("bad armor header");
  }
  std::string hex, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    hex += line;
  }
  for (char c : hex) {
    if ((c < '0' || c > '9') && (c < 'a' || c > 'f')) {
      throw DecodeError("armored body is not lowercase hex");
    }
  }
  a.body = FromHex(hex);
  return a;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw DataError("short write to " + path.string());
}

Bytes Params::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.String16(curve->id());
  w.U16(t);
  w.U16(n);
  w.Raw(ypub.EncodeFixed());
  w.U16(static_cast<uint16_t>(commitments.size()));
  for (const VssCommitment& c : commitments) {
    const Bytes enc = c.Encode();
    w.U32(static_cast<uint32_t>(enc.size()));
    w.Raw(enc);
  }
  return std::move(w).take();
}

Params Params::Decode(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const std::string id = r.String16();
  const Curve* curve = nullptr;
  try {
    curve = &Curve::Get(id);
  } catch (const std::invalid_argument&) {
    throw DecodeError("unknown curve profile " + id);
  }
  const uint16_t t = r.U16();
  const uint16_t n = r.U16();
  if (t < 1 || t > n) throw DecodeError("parameters: bad threshold");
  Point ypub = wire::ReadPoint(r, *curve);
  const uint16_t count = r.U16();
  if (count != n) throw DecodeError("parameters: commitment count does not match N");
  std::vector<VssCommitment> commitments;
  for (uint16_t k = 0; k < count; ++k) {
    const uint32_t len = r.U32();
    VssCommitment c = VssCommitment::Decode(*curve, r.Raw(len));
    if (c.index != k + 1 || c.points.size() != t) throw DecodeError("parameters: bad commitment");
    commitments.push_back(std::move(c));
  }
  r.ExpectDone("parameters");
  if (!(CommittedShareImage(commitments, 0) == ypub)) {
    throw DecodeError("parameters: Y_pub does not match the commitments");
  }
  return Params{curve, t, n, std::move(ypub), std::move(commitments)};
}

std::string Params::Hash() const {
  const Bytes digest = DomainHash(*curve, "TRSE-PARAMS", 0, Encode());
  return ToHex(std::span(digest).first(8));
}

Bytes Bundle::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  const Bytes r = ring.Encode();
  const Bytes c = ct.Encode();
  w.U32(static_cast<uint32_t>(r.size()));
  w.Raw(r);
  w.U32(static_cast<uint32_t>(c.size()));
  w.Raw(c);
  return std::move(w).take();
}

Bundle Bundle::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  RingPublic ring = RingPublic::Decode(curve, r.Raw(r.U32()));
  Ciphertext ct = Ciphertext::Decode(curve, r.Raw(r.U32()));
  r.ExpectDone("signcryption bundle");
  if (ct.ring_size() != ring.size()) throw DecodeError("bundle: ring and ciphertext disagree on n");
  return Bundle{std::move(ring), std::move(ct)};
}

Workspace::Workspace(fs::path dir) : dir_(std::move(dir)) {}

fs::path Workspace::SharePath(PartyIndex i) const {
  return dir_ / ("share-" + std::to_string(i) + ".trse");
}

fs::path Workspace::KeyPath(std::string_view id) const {
  return dir_ / "keys" / (std::string(id) + ".key");
}

const Params& Workspace::params() const {
  if (!params_) {
    const Armored a = Unarmor(ReadFile(ParamsPath()));
    if (a.type != "params") throw DecodeError(ParamsPath().string() + " is not a parameter file");
    Params p = Params::Decode(a.body);
    if (a.params_hash != p.Hash()) throw DecodeError("parameter file hash does not match its content");
    params_ = std::move(p);
  }
  return *params_;
}

Bytes Workspace::Load(const fs::path& path, std::string_view type) const {
  const Armored a = Unarmor(ReadFile(path));
  if (a.type != type) {
    throw DecodeError(path.string() + ": expected " + std::string(type) + ", found " + a.type);
  }
  if (a.params_hash != hash()) {
    throw DecodeError(path.string() + " belongs to different parameters");
  }
  return a.body;
}

void Workspace::Store(const fs::path& path, std::string_view type,
                      std::span<const uint8_t> body) const {
  WriteFile(path, Armor(type, hash(), body));
}

// The registry keeps its own line format (already hex per record) under the
// armor header so that appends show up as one-line diffs.
Registry Workspace::LoadRegistry() const {
  const std::string text = ReadFile(RegistryPath());
  const size_t eol = text.find('\n');
  if (eol == std::string::npos) throw DecodeError("registry: missing header");
  std::istringstream h(text.substr(0, eol));
  std::string magic, type, params_hash;
  if (!(h >> magic >> type >> params_hash) || magic != "trse" || type != "registry") {
    throw DecodeError("registry: bad header");
  }
  if (params_hash != hash()) throw DecodeError("registry belongs to different parameters");
  return Registry::Parse(curve(), std::string_view(text).substr(eol + 1));
}

void Workspace::StoreRegistry(const Registry& registry) const {
  WriteFile(RegistryPath(), "trse registry " + hash() + "\n" + registry.Serialize());
}

bool ValidId(std::string_view id) {
  if (id.empty() || id.size() > 64 || id == "." || id == "..") return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '@' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace trse::cli

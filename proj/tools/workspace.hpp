#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trse/core.hpp"
#include "trse/threshold.hpp"

namespace trse::cli {

namespace fs = std::filesystem;

// Exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Missing/unreadable files, wrong armor, mismatched parameter hash, ...
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Armored file:
//   trse <type> <params-hash>
//   <lowercase hex, 64 chars per line>
struct Armored {
  std::string type;
  std::string params_hash;
  Bytes body;
};
std::string Armor(std::string_view type, std::string_view params_hash, std::span<const uint8_t> body);
Armored Unarmor(std::string_view text);

std::string ReadFile(const fs::path& path);
void WriteFile(const fs::path& path, std::string_view data);

// ver || curve-id || t || N || Y_pub || count || (len32 || commitment)*
struct Params {
  const Curve* curve;
  uint16_t t;
  uint16_t n;
  Point ypub;
  std::vector<VssCommitment> commitments;

  Bytes Encode() const;
  static Params Decode(std::span<const uint8_t> bytes);
  // First 8 bytes of a tagged hash of the encoding, as hex.
  std::string Hash() const;
};

// Signcryption bundle: the ring travels with the ciphertext.
// ver || len32 || ring || len32 || ciphertext
struct Bundle {
  RingPublic ring;
  Ciphertext ct;

  Bytes Encode() const;
  static Bundle Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// Directory layout:
//   params.trse  registry.trse  share-<i>.trse (setup output)  keys/<id>.key
class Workspace {
 public:
  explicit Workspace(fs::path dir);

  const fs::path& dir() const { return dir_; }
  fs::path ParamsPath() const { return dir_ / "params.trse"; }
  fs::path RegistryPath() const { return dir_ / "registry.trse"; }
  fs::path SharePath(PartyIndex i) const;
  fs::path KeyPath(std::string_view id) const;

  // Loads and caches params.trse.
  const Params& params() const;
  const Curve& curve() const { return *params().curve; }
  std::string hash() const { return params().Hash(); }

  // Reads an armored file of the given type, bound to these parameters.
  Bytes Load(const fs::path& path, std::string_view type) const;
  void Store(const fs::path& path, std::string_view type, std::span<const uint8_t> body) const;

  Registry LoadRegistry() const;
  void StoreRegistry(const Registry& registry) const;

 private:
  fs::path dir_;
  mutable std::optional<Params> params_;
};

// Letters, digits and ._@- ; 1..64 chars. Ids become file names.
bool ValidId(std::string_view id);

}  // namespace trse::cli

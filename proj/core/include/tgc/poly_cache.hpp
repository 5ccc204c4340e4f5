#pragma once

#include "tgc/ncpoly.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tgc {

std::uint64_t fnv1a64(std::string_view data);

struct CacheCorrupt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CacheKey {
  std::string family;  // "u", "psi", "P"
  std::vector<int> indices;
  int truncation = 0;
};

/// On-disk store of computed polynomials. One file per key,
/// `<family>_<indices>_<r>.ncp`: a digest header line followed by the symbol
/// table and the canonical text form. Reads validate the digest; writes go
/// through a temp file and an atomic rename, so concurrent readers never see
/// a partial file.
class PolyCache {
 public:
  explicit PolyCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const CacheKey& key) const;

  /// Absent key -> nullopt; digest mismatch -> CacheCorrupt.
  std::optional<NCPoly> get(const CacheKey& key) const;
  void put(const CacheKey& key, const NCPoly& value) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace tgc

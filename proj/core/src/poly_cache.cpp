#include "tgc/poly_cache.hpp"

#include <fstream>
#include <sstream>

namespace tgc {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  return h;
}

PolyCache::PolyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path PolyCache::path_for(const CacheKey& key) const {
  std::ostringstream name;
  name << key.family;
  for (int idx : key.indices) name << '_' << idx;
  name << '_' << key.truncation << ".ncp";
  return dir_ / name.str();
}

namespace {

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::string encode_payload(const NCPoly& value) {
  std::ostringstream os;
  os << "r " << value.truncation() << '\n';
  const auto& gens = value.symbols()->all();
  os << "gens " << gens.size() << '\n';
  for (const Generator& g : gens) os << "g " << g.id << ' ' << g.grade << ' ' << g.label << '\n';
  os << "terms " << value.term_count() << '\n';
  os << to_canonical_string(value);
  return os.str();
}

}  // namespace

std::optional<NCPoly> PolyCache::get(const CacheKey& key) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) throw CacheCorrupt("empty cache file " + path.string());
  std::stringstream rest;
  rest << in.rdbuf();
  const std::string payload = rest.str();
  if (header.rfind("digest=", 0) != 0 || header.substr(7) != hex16(fnv1a64(payload)))
    throw CacheCorrupt("digest mismatch in cache file " + path.string());

  std::istringstream is(payload);
  std::string tok;
  int r = 0;
  is >> tok >> r;
  if (tok != "r") throw CacheCorrupt("bad payload header in " + path.string());
  std::size_t gen_count = 0;
  is >> tok >> gen_count;
  if (tok != "gens") throw CacheCorrupt("bad generator header in " + path.string());
  auto syms = std::make_shared<SymbolTable>();
  for (std::size_t k = 0; k < gen_count; ++k) {
    int id = 0, grade = 0;
    std::string label;
    is >> tok >> id >> grade >> label;
    if (tok != "g") throw CacheCorrupt("bad generator line in " + path.string());
    syms->add(id, label, grade);
  }
  std::size_t term_count = 0;
  is >> tok >> term_count;
  if (tok != "terms") throw CacheCorrupt("bad term header in " + path.string());
  std::string line;
  std::getline(is, line);  // finish the terms line
  std::ostringstream body;
  while (std::getline(is, line)) body << line << '\n';
  NCPoly value = parse_ncpoly(body.str(), r, syms);
  if (value.term_count() != term_count)
    throw CacheCorrupt("term count mismatch in " + path.string());
  return value;
}

void PolyCache::put(const CacheKey& key, const NCPoly& value) const {
  const std::string payload = encode_payload(value);
  const auto path = path_for(key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << "digest=" << hex16(fnv1a64(payload)) << '\n' << payload;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tgc

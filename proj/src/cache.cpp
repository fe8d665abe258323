#include <fstream>
#include <sstream>

#include "octlab/checks.hpp"

namespace octlab {

namespace {

std::string field_tag(const FieldSpec& f) {
  if (f.kind == FieldKind::Rationals) return "q";
  return "fp:" + std::to_string(f.modulus);
}

FieldSpec parse_field_tag(const std::string& s, bool exploratory) {
  if (s == "q") return {FieldKind::Rationals, 0, exploratory};
  if (s.rfind("fp:", 0) == 0)
    return {FieldKind::PrimeField, std::stoull(s.substr(3)), exploratory};
  fail(ErrorCode::BadInput, "bad field tag: " + s);
}

}  // namespace

std::string cache_file_name(int n, Sign sign, const FieldSpec& field) {
  std::ostringstream os;
  os << "herm_" << sign_name(sign) << "_n" << n << "_" << field_tag(field);
  std::string s = os.str();
  for (auto& c : s)
    if (c == ':') c = '_';
  return s + ".octcache";
}

void write_cache(const StructureAlgebra& a, int n, Sign sign, const std::string& path) {
  std::ostringstream os;
  os << "octlab-cache 1\n";
  os << "n " << n << "\n";
  os << "sign " << sign_name(sign) << "\n";
  os << "field " << field_tag(a.field().spec()) << "\n";
  os << "dim " << a.dim() << "\n";
  os << "labels";
  for (const auto& l : a.labels()) os << " " << l;
  os << "\n";
  std::size_t count = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) count += a.table(i, j).size();
  os << "constants " << count << "\n";
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.table(i, j))
        os << i << " " << j << " " << k << " " << scalar_to_string(c) << "\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << os.str();
  if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

StructureAlgebra load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot read " + path);
  std::string magic, key;
  int version = 0;
  in >> magic >> version;
  if (magic != "octlab-cache" || version != 1) fail(ErrorCode::Io, "bad cache header");
  int n = 0, dim = 0;
  std::string sign_str, field_str;
  in >> key >> n;
  if (key != "n") fail(ErrorCode::Io, "bad cache: n");
  in >> key >> sign_str;
  if (key != "sign") fail(ErrorCode::Io, "bad cache: sign");
  in >> key >> field_str;
  if (key != "field") fail(ErrorCode::Io, "bad cache: field");
  in >> key >> dim;
  if (key != "dim") fail(ErrorCode::Io, "bad cache: dim");
  in >> key;
  if (key != "labels") fail(ErrorCode::Io, "bad cache: labels");
  std::vector<std::string> labels(static_cast<std::size_t>(dim));
  for (auto& l : labels) in >> l;
  std::size_t count = 0;
  in >> key >> count;
  if (key != "constants") fail(ErrorCode::Io, "bad cache: constants");

  Sign sign = sign_str == "plus" ? Sign::Plus : Sign::Minus;
  Field field = field_make(parse_field_tag(field_str, true));
  std::vector<StructureAlgebra::Terms> table(static_cast<std::size_t>(dim) * dim);
  for (std::size_t t = 0; t < count; ++t) {
    int i, j, k;
    std::string v;
    if (!(in >> i >> j >> k >> v)) fail(ErrorCode::Io, "truncated cache");
    table[static_cast<std::size_t>(i) * dim + j].push_back({k, scalar_from_string(v)});
  }
  std::optional<Vec> unit;
  if (sign == Sign::Plus) {
    Vec u = vec_zero(static_cast<std::size_t>(dim));
    int idx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        if (a == b) u[static_cast<std::size_t>(idx)] = field.one();
        ++idx;
      }
    unit = u;
  }
  std::ostringstream name;
  name << "sym" << (sign == Sign::Plus ? "+" : "-") << "(M" << n << "(O),J)";
  return StructureAlgebra(name.str(), field,
                          sign == Sign::Plus ? Flavor::Commutative : Flavor::Anticommutative,
                          std::move(labels), std::move(table), std::move(unit));
}

std::vector<std::string> cmd_build(const RunConfig& config) {
  config.validate();
  if (config.cache_dir.empty()) fail(ErrorCode::BadInput, "build needs --cache-dir");
  Field field = config.make_field();
  std::vector<std::string> paths;
  for (Sign sign : config.signs()) {
    StructureAlgebra a = build_herm(config.n, sign, field);
    std::string path = config.cache_dir + "/" + cache_file_name(config.n, sign, field.spec());
    write_cache(a, config.n, sign, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace octlab

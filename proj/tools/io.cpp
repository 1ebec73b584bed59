#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"
#include "homotope/structure.hpp"

namespace homotope::cli {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& what) {
  throw ParseError(std::string(where) + ": " + what);
}

const Json& field_of(const Json& doc, const char* key, std::string_view where) {
  if (!doc.is_object()) fail(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t parse_index(const Json& j, std::string_view where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

FieldSpec parse_field(const Json& j, std::string_view where) {
  try {
    if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
    if (j.is_object() && j.contains("prime")) return FieldSpec::prime(parse_index(j.at("prime"), where));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected \"rationals\" or {\"prime\": p}, got " + j.dump());
}

Scalar parse_scalar(const FieldSpec& f, const Json& j, std::string_view where) {
  try {
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    if (j.is_number_integer()) return Scalar(f, j.get<long>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a scalar string, got " + j.dump());
}

Vector parse_vector(const FieldSpec& f, std::size_t n, const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where, "expected " + std::to_string(n) + " coordinates");
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(parse_scalar(f, j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

WedderburnLift parse_lift(const Algebra& a, const Json& j, const std::string& where) {
  WedderburnLift lift;
  const Json& sizes = field_of(j, "block_sizes", where);
  const Json& units = field_of(j, "units", where);
  if (!sizes.is_array() || !units.is_array() || sizes.size() != units.size())
    fail(where, "block_sizes and units must be arrays of equal length");
  std::size_t total = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    std::size_t n = parse_index(sizes[b], where + ".block_sizes[" + std::to_string(b) + "]");
    lift.block_sizes.push_back(n);
    total += n * n;
    if (!units[b].is_array() || units[b].size() != n * n) fail(where, "block " + std::to_string(b) + " needs n^2 units");
    std::vector<Element> block;
    for (std::size_t k = 0; k < n * n; ++k)
      block.emplace_back(
          parse_vector(a.field(), a.dim(), units[b][k], where + ".units[" + std::to_string(b) + "][" + std::to_string(k) + "]"));
    lift.units.push_back(std::move(block));
  }
  if (j.contains("radical")) {
    const Json& rad = j.at("radical");
    if (!rad.is_array()) fail(where, "radical must be an array");
    for (std::size_t k = 0; k < rad.size(); ++k)
      lift.radical.emplace_back(parse_vector(a.field(), a.dim(), rad[k], where + ".radical[" + std::to_string(k) + "]"));
  }
  if (total + lift.radical.size() != a.dim()) fail(where, "sum of n_b^2 plus radical size must equal dim");
  // matrix unit relations, across blocks as well
  for (std::size_t b = 0; b < lift.block_sizes.size(); ++b)
    for (std::size_t c = 0; c < lift.block_sizes.size(); ++c) {
      const std::size_t nb = lift.block_sizes[b], nc = lift.block_sizes[c];
      for (std::size_t i = 0; i < nb * nb; ++i)
        for (std::size_t k = 0; k < nc * nc; ++k) {
          Element want = a.zero();
          if (b == c && i % nb == k / nc) want = lift.units[b][(i / nb) * nb + k % nc];
          if (!(a.multiply(lift.units[b][i], lift.units[c][k]) == want)) fail(where, "matrix unit relations fail");
        }
    }
  std::vector<Vector> rad_given, rad_true;
  for (const auto& r : lift.radical) rad_given.push_back(r.coords());
  for (const auto& r : jacobson_radical(a)) rad_true.push_back(r.coords());
  if (span_dim(a.field(), a.dim(), rad_given) != rad_given.size() || !same_subspace(a.field(), a.dim(), rad_given, rad_true))
    fail(where, "radical basis does not span R(A)");
  return lift;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json scalar_json(const Scalar& s) { return s.to_string(); }

Json element_json(const Element& x) {
  Json j = Json::array();
  for (const auto& c : x.coords()) j.push_back(scalar_json(c));
  return j;
}

Json matrix_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

Json algebra_json(const Algebra& a) {
  Json j;
  if (a.field().is_rational()) j["field"] = "rationals";
  else j["field"] = {{"prime", a.field().characteristic()}};
  j["dim"] = a.dim();
  j["labels"] = a.labels();
  Json sc = Json::array();
  for (const auto& c : a.structure_constants()) sc.push_back({c.i, c.j, c.l, c.c.to_string()});
  j["structure_constants"] = std::move(sc);
  if (a.unit()) j["unit"] = element_json(*a.unit());
  return j;
}

Algebra parse_algebra(const Json& doc, std::string_view where) {
  const std::string w(where);
  FieldSpec f = parse_field(field_of(doc, "field", where), w + ".field");
  const std::size_t d = parse_index(field_of(doc, "dim", where), w + ".dim");
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const Json& l = doc.at("labels");
    if (!l.is_array() || l.size() != d) fail(w + ".labels", "expected " + std::to_string(d) + " labels");
    for (const auto& s : l) {
      if (!s.is_string()) fail(w + ".labels", "labels must be strings");
      labels.push_back(s.get<std::string>());
    }
  }
  const Json& scj = field_of(doc, "structure_constants", where);
  if (!scj.is_array()) fail(w + ".structure_constants", "expected an array");
  std::vector<StructureConstant> sc;
  for (std::size_t k = 0; k < scj.size(); ++k) {
    const std::string at = w + ".structure_constants[" + std::to_string(k) + "]";
    const Json& e = scj[k];
    if (!e.is_array() || e.size() != 4) fail(at, "expected [i, j, l, scalar]");
    std::size_t idx[3];
    for (int t = 0; t < 3; ++t) {
      idx[t] = parse_index(e[t], at + "[" + std::to_string(t) + "]");
      if (idx[t] >= d) fail(at + "[" + std::to_string(t) + "]", "index " + std::to_string(idx[t]) + " out of range for dim " + std::to_string(d));
    }
    sc.push_back({idx[0], idx[1], idx[2], parse_scalar(f, e[3], at + "[3]")});
  }
  std::optional<Element> unit;
  if (doc.contains("unit")) unit = Element(parse_vector(f, d, doc.at("unit"), w + ".unit"));
  Algebra a = [&] {
    try {
      return Algebra(f, d, sc, labels, unit);
    } catch (const Error& e) {
      fail(w + ".unit", e.what());
    }
  }();
  if (doc.contains("wedderburn_lift")) a.set_lift(parse_lift(a, doc.at("wedderburn_lift"), w + ".wedderburn_lift"));
  return a;
}

ModuleRep parse_module(const Json& doc, const std::filesystem::path& base_dir, const AlgebraPtr& fallback,
                       std::string_view where) {
  const std::string w(where);
  AlgebraPtr alg = fallback;
  if (doc.contains("algebra")) {
    const Json& aj = doc.at("algebra");
    if (aj.is_string()) {
      std::filesystem::path p = base_dir / aj.get<std::string>();
      Json parsed;
      try {
        parsed = Json::parse(read_file(p));
      } catch (const Json::exception& e) {
        fail(w + ".algebra", e.what());
      }
      alg = share(parse_algebra(parsed, p.string()));
    } else {
      alg = share(parse_algebra(aj, w + ".algebra"));
    }
  }
  if (!alg) fail(w, "no algebra given");
  Side side = Side::Left;
  if (doc.contains("side")) {
    const Json& s = doc.at("side");
    if (s == "left") side = Side::Left;
    else if (s == "right") side = Side::Right;
    else fail(w + ".side", "expected \"left\" or \"right\"");
  }
  const std::size_t d = parse_index(field_of(doc, "dim", where), w + ".dim");
  const Json& act = field_of(doc, "action", where);
  if (!act.is_array() || act.size() != alg->dim())
    fail(w + ".action", "expected one matrix per basis element (" + std::to_string(alg->dim()) + ")");
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < act.size(); ++i) {
    const std::string at = w + ".action[" + std::to_string(i) + "]";
    if (!act[i].is_array() || act[i].size() != d) fail(at, "expected " + std::to_string(d) + " rows");
    Matrix m(alg->field(), d, d);
    for (std::size_t r = 0; r < d; ++r) {
      Vector row = parse_vector(alg->field(), d, act[i][r], at + "[" + std::to_string(r) + "]");
      for (std::size_t c = 0; c < d; ++c) m(r, c) = row[c];
    }
    action.push_back(std::move(m));
  }
  try {
    return ModuleRep(alg, side, d, std::move(action), doc.value("tag", std::string("file")));
  } catch (const Error& e) {
    fail(w, e.what());
  }
}

}  // namespace homotope::cli

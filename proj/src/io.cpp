#include <fstream>
#include <stdexcept>

#include "bilin/harness.hpp"

namespace bilin {

using nlohmann::json;

namespace {

json vec_json(const ElemVector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Elem read_elem(const json& j, std::uint32_t q) {
  if (!j.is_number_integer()) throw std::invalid_argument("instance coefficient is not an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v >= static_cast<std::int64_t>(q))
    throw std::invalid_argument("instance coefficient not reduced mod q");
  return static_cast<Elem>(v);
}

ElemVector read_vec(const json& j, int n, std::uint32_t q, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument(std::string("instance field '") + what + "' has the wrong length");
  ElemVector v(n);
  for (int i = 0; i < n; ++i) v[i] = read_elem(j[i], q);
  return v;
}

}  // namespace

json to_json(const BilinearSequence& B) {
  json polys = json::array();
  for (const auto& f : B.polys()) {
    json A = json::array();
    for (int i = 0; i < B.nx(); ++i) {
      json row = json::array();
      for (int j = 0; j < B.ny(); ++j) row.push_back(f.A(i, j));
      A.push_back(row);
    }
    polys.push_back({{"A", A}, {"b", vec_json(f.b)}, {"c", vec_json(f.c)}, {"d", f.d0}});
  }
  return {{"q", B.field().q()}, {"nx", B.nx()}, {"ny", B.ny()}, {"m", B.m()}, {"polys", polys}};
}

BilinearSequence sequence_from_json(const json& j) {
  for (const char* key : {"q", "nx", "ny", "m", "polys"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("instance is missing '") + key + "'");
  FieldCtx F(j.at("q").get<std::uint64_t>());
  const int nx = j.at("nx").get<int>(), ny = j.at("ny").get<int>(), m = j.at("m").get<int>();
  Params{nx, ny, m, F.q()}.validate();
  const json& polys = j.at("polys");
  if (!polys.is_array() || static_cast<int>(polys.size()) != m)
    throw std::invalid_argument("instance 'polys' length differs from m");
  std::vector<BilinearPoly> out;
  for (const auto& p : polys) {
    BilinearPoly f = BilinearPoly::zero(nx, ny);
    const json& A = p.at("A");
    if (!A.is_array()) throw std::invalid_argument("instance field 'A' is not an array");
    const bool nested = !A.empty() && A.front().is_array();
    if (nested) {
      if (static_cast<int>(A.size()) != nx) throw std::invalid_argument("instance field 'A' has the wrong shape");
      for (int r = 0; r < nx; ++r) f.A.row(r) = read_vec(A[r], ny, F.q(), "A").transpose();
    } else {
      ElemVector flat = read_vec(A, nx * ny, F.q(), "A");
      for (int r = 0; r < nx; ++r)
        for (int c = 0; c < ny; ++c) f.A(r, c) = flat[r * ny + c];
    }
    f.b = read_vec(p.at("b"), nx, F.q(), "b");
    f.c = read_vec(p.at("c"), ny, F.q(), "c");
    f.d0 = read_elem(p.at("d"), F.q());
    out.push_back(std::move(f));
  }
  return {F, nx, ny, std::move(out)};
}

void save_instance(const BilinearSequence& B, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(B).dump(2) << '\n';
}

BilinearSequence load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

json to_json(const SolveReport& r) {
  json j;
  j["status"] = to_string(r.status);
  if (r.solution) j["solution"] = {{"u", vec_json(r.solution->u)}, {"v", vec_json(r.solution->v)}};
  j["solving_degree"] = r.solving_degree ? json(*r.solving_degree) : json(nullptr);
  json ranks = json::object();
  for (const auto& [d, rk] : r.per_degree_ranks) ranks[std::to_string(d)] = rk;
  j["per_degree_ranks"] = ranks;
  json lin = json::array();
  for (const auto& l : r.linear_polys) lin.push_back({{"x", vec_json(l.x)}, {"y", vec_json(l.y)}, {"c", l.constant}});
  j["linear_polys"] = lin;
  j["mutant_count"] = r.mutant_count;
  j["guesses_tried"] = r.guesses_tried;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["wall_seconds"] = r.wall_seconds;
  j["notes"] = r.notes;
  return j;
}

}  // namespace bilin

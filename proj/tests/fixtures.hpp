#pragma once

#include <string>
#include <vector>

#include "falg/falg.hpp"

namespace fixtures {

using namespace falg;

inline Scalar s(const Chart& c, const std::string& text) { return parse_scalar(text, c); }

inline Chart plane() { return make_chart({"x", "y"}); }
inline Chart space() { return make_chart({"x", "y", "z"}); }
inline Chart bump_plane() { return make_chart({"x", "y"}, {{"chi", {"2*x^-3*chi", "0"}}}); }

inline std::vector<std::vector<Scalar>> matrix(const Chart& c, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (const auto& e : r) row.push_back(parse_scalar(e, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline TensorField vec(const Chart& c, const std::vector<std::string>& comps) {
  std::vector<Scalar> v;
  for (const auto& e : comps) v.push_back(parse_scalar(e, c));
  return TensorField::vector_field(c, std::move(v));
}

inline TensorField form(const Chart& c, const std::vector<std::string>& comps) {
  std::vector<Scalar> v;
  for (const auto& e : comps) v.push_back(parse_scalar(e, c));
  return TensorField::one_form(c, std::move(v));
}

// rho(e1) = dx, rho(e2) = chi dy
inline AnchoredBundle bump_bundle() { return AnchoredBundle(bump_plane(), matrix(bump_plane(), {{"1", "0"}, {"0", "chi"}})); }

// rho(e1) = dx, rho(e2) = x dy - y dx, rho(e3) = x dz - z dx
inline AnchoredBundle rotation_bundle() {
  const Chart c = space();
  return AnchoredBundle(c, matrix(c, {{"1", "0", "0"}, {"-y", "x", "0"}, {"-z", "0", "x"}}));
}

inline TensorField metric(const Chart& c) {
  TensorField g(c, 0, 2);
  for (std::size_t i = 0; i < c.dimension(); ++i) g.at({i, i}) = Scalar(1);
  return g;
}

// rho(e1) = dx, rho(e2) = 0, nabla e2 = x dy (x) e2
inline AnchoredBundle noncartan_bundle() { return AnchoredBundle(plane(), matrix(plane(), {{"1", "0"}, {"0", "0"}})); }
inline Connection noncartan_connection(const Chart& c) {
  Connection conn(c, 2);
  conn.gamma(1, 1, 1) = parse_scalar("x", c);
  return conn;
}
inline FiniteLieAlgebroid noncartan_algebroid() {
  const Chart c = plane();
  std::vector<std::vector<std::vector<Scalar>>> zero(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
  return FiniteLieAlgebroid(c, matrix(c, {{"1", "0"}, {"0", "0"}}), zero, noncartan_connection(c));
}

// Translations T1..T3 and rotations R4 = x dy - y dx, R5 = x dz - z dx, R6 = y dz - z dy.
inline FiniteLieAlgebroid iso3(const Chart& c) {
  std::vector<std::vector<std::vector<Scalar>>> k(6, std::vector<std::vector<Scalar>>(6, std::vector<Scalar>(6)));
  auto set = [&](int a, int b, int cc, int v) {
    k[a - 1][b - 1][cc - 1] = Scalar(v);
    k[b - 1][a - 1][cc - 1] = Scalar(-v);
  };
  set(1, 4, 2, 1);
  set(1, 5, 3, 1);
  set(2, 4, 1, -1);
  set(2, 6, 3, 1);
  set(3, 5, 1, -1);
  set(3, 6, 2, -1);
  set(4, 5, 6, -1);
  set(4, 6, 5, 1);
  set(5, 6, 4, -1);
  return FiniteLieAlgebroid(c,
                            matrix(c, {{"1", "0", "0"},
                                       {"0", "1", "0"},
                                       {"0", "0", "1"},
                                       {"-y", "x", "0"},
                                       {"-z", "0", "x"},
                                       {"0", "-z", "y"}}),
                            k, Connection::flat(c, 6));
}

inline std::string corpus(const std::string& name) { return std::string(FALG_CORPUS_DIR) + "/" + name; }

}  // namespace fixtures

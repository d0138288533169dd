#pragma once

#include "seifert/matrix.hpp"
#include "seifert/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace seifert::lie {

enum class Family { A, B, C, D, E, F, G };

/// Root datum of a compact simply connected simple group. Roots are integer
/// vectors in the basis of simple roots; the inner product is the Gram
/// matrix of the simple roots, scaled so long roots have squared length 2.
struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  std::vector<RationalVector> simple_roots;
  std::vector<RationalVector> positive_roots;
  RationalVector highest_root;
  Matrix<Rational> inner_product;
  /// cartan(i, j) = 2 <a_i, a_j> / <a_j, a_j> = a_i(a_j^vee).
  Matrix<Rational> cartan;
  int dim_g = 0;

  std::string name() const;
  /// Coefficients m_i of the highest root in the simple roots.
  const RationalVector& marks() const { return highest_root; }
};

/// Point of the fundamental alcove. coords[i] = a_i(X), the value of the i-th
/// simple root on X; the alcove is {coords >= 0, theta(X) <= 1}.
struct AlcoveClass {
  RationalVector coords;

  bool operator==(const AlcoveClass&) const = default;
  bool operator<(const AlcoveClass& other) const { return lex_less(coords, other.coords); }
};

struct CentralElement {
  AlcoveClass cls;
  int order = 1;

  bool operator==(const CentralElement&) const = default;
};

/// Accepts "A1", "C2", "G2", "E6", ... Throws InputError naming the constraint.
RootSystem build_root_system(Family family, int rank);
RootSystem parse_group(const std::string& descriptor);

/// |Z(G)| for the simply connected group of this type (table).
int center_order(const RootSystem& rs);

/// alpha(X) for a root given in simple-root coordinates.
Rational root_value(const RationalVector& root, const AlcoveClass& u);
Rational root_value(const RationalVector& root, const RationalVector& x);

bool in_alcove(const RootSystem& rs, const RationalVector& x);

/// Throws InputError unless u lies in the fundamental alcove.
void require_alcove(const RootSystem& rs, const AlcoveClass& u);

/// prod over positive roots with alpha(X) not integral of 2|sin(pi alpha(X))|.
double delta(const RootSystem& rs, const AlcoveClass& u);

/// Squared factors 4 sin^2(pi alpha(X)) when every one is rational
/// (alpha(X) mod 1 in {1/2, 1/3, 2/3, 1/4, 3/4, 1/6, 5/6}); empty otherwise.
std::optional<Rational> delta_squared_exact(const RootSystem& rs, const AlcoveClass& u);

/// Positive roots with alpha(X) in Z.
int integral_positive_roots(const RootSystem& rs, const AlcoveClass& u);

/// dim of the centralizer Lie algebra: rank + #{roots alpha : alpha(X) in Z}.
int centralizer_dim(const RootSystem& rs, const AlcoveClass& u);

/// dim of the conjugacy class: dim_g - centralizer_dim.
int class_dim(const RootSystem& rs, const AlcoveClass& u);

enum class WallOrder {
  /// Reflect across the lowest-index violated wall (affine wall last).
  FirstViolated,
  /// Reflect across the wall that is violated by the largest amount.
  MostViolated,
};

/// Reduces an arbitrary X (given by its simple-root values) into the
/// fundamental alcove by reflections in the affine Weyl group.
AlcoveClass reduce_to_alcove(const RootSystem& rs, RationalVector x, WallOrder order = WallOrder::FirstViolated);

/// Number of affine root hyperplanes strictly separating x from the interior
/// point with a_i = 1/h. Decreases under every reduction step.
long separating_walls(const RootSystem& rs, const RationalVector& x);

/// Alcove representative of [g^k] for g in the class u.
AlcoveClass class_power(const RootSystem& rs, const AlcoveClass& u, long k);

/// Alcove points with alpha(X) in Z for every root, with their orders.
std::vector<CentralElement> center_elements(const RootSystem& rs);

bool is_central(const RootSystem& rs, const AlcoveClass& u);

AlcoveClass identity_class(const RootSystem& rs);

/// Weyl group as integer matrices acting on fundamental-weight coordinates,
/// each with its sign det(w) = (-1)^length.
struct WeylGroup {
  std::vector<std::vector<long>> matrices;  // row-major rank x rank
  std::vector<int> signs;
  int rank = 0;

  std::size_t order() const { return signs.size(); }
};

/// Enumerates W by closure from the simple reflections. Throws InputError if
/// |W| exceeds max_order.
WeylGroup weyl_group(const RootSystem& rs, std::size_t max_order = 200000);

/// <omega_i, omega_j> for the fundamental weights.
Matrix<Rational> weight_gram(const RootSystem& rs);

/// omega_i(X) for X given by simple-root values: row i of the inverse Cartan
/// matrix applied to x.
RationalVector fundamental_weight_values(const RootSystem& rs, const RationalVector& x);

/// Weyl dimension formula; lambda in fundamental-weight coordinates.
double weyl_dimension(const RootSystem& rs, const std::vector<long>& lambda);

/// <mu, alpha^vee> for mu in fundamental-weight coordinates and a positive
/// root in simple-root coordinates.
Rational coroot_pairing(const RootSystem& rs, const std::vector<long>& mu, const RationalVector& root);

/// Riemannian volume of G (scale 1 inner product) by the Macdonald formula:
/// (2 pi)^r sqrt(det coroot Gram) * prod_{alpha>0} 2 pi / <rho, alpha>.
double group_volume(const RootSystem& rs);

/// Volume of the centralizer of e^X (same torus, integral roots only).
double centralizer_volume(const RootSystem& rs, const AlcoveClass& u);

}  // namespace seifert::lie

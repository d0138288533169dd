#pragma once

#include "seifert/lie.hpp"
#include "seifert/rational.hpp"
#include "seifert/seifert.hpp"

#include <complex>
#include <string>
#include <vector>

namespace seifert::volumes {

/// Overall constant of the character-sum volume formula. Calibrated against
/// the SU(2) convolution oracle (genus 0, four classes 1/2).
inline constexpr double kWittenConstant = 1.0;

struct Normalization {
  /// Multiplier of the basic inner product (long roots of squared length 2).
  double scale = 1.0;
  double constant = kWittenConstant;
  std::string inner_product = "basic";
};

struct VolumeResult {
  double value = 0.0;
  /// Largest <lambda + rho, lambda + rho> included.
  long truncation = 0;
  std::size_t terms = 0;
  double tail_estimate = 0.0;
  Normalization normalization;
};

/// Character at e^X of the irreducible representation with highest weight
/// lambda (fundamental-weight coordinates). Singular X use the derivative form
/// of the Weyl character formula.
std::complex<double> character(const lie::RootSystem& rs, const std::vector<long>& lambda, const lie::AlcoveClass& u);

/// Volume of the moduli space of flat connections on a genus-g surface with
/// n boundary holonomies in the classes u:
///   C |Z| (2 pi)^{-dim} Vol(G)^{2g-2+n} prod_i Delta(u_i) / Vol(G_{u_i})
///     sum_lambda prod_i chi_lambda(u_i) / d_lambda^{2g-2+n},
/// times scale^{dim/2}. Weights are summed while <lambda + rho, lambda + rho> <= truncation.
VolumeResult witten_volume(int genus, const lie::RootSystem& rs, const std::vector<lie::AlcoveClass>& u,
                           long truncation, double scale = 1.0);

/// torsion_prefactor(s, rs, label) * witten_volume(genus, rs, label.u).
VolumeResult reidemeister_volume(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label,
                                 long truncation, double scale = 1.0);

struct AbelianLabel {
  /// Angles in [0, 1): u_i = exp(2 pi i u[i]).
  std::vector<Rational> u;
  Rational v;
};

struct AbelianComponentSet {
  std::vector<AbelianLabel> labels;
  Rational euler;
};

/// All (u, v) in U(1)^{n+1} with prod u_i = 1 and u_i^{p_i} = v^{q_i}; sorted by (v, u).
AbelianComponentSet abelian_components(const SeifertData& s);

/// chi prod p_i.
Rational abelian_torsion_scalar(const SeifertData& s);

/// |chi prod p_i|^{-1/2}.
double abelian_density_factor(const SeifertData& s);

/// Rebuilds the three Mayer-Vietoris sequences of the U(1) case from integer
/// matrices on H_1 of a genus-g surface with n boundary circles and composes
/// their determinants; the result is chi prod p_i.
Rational abelian_mv_verify(const SeifertData& s, int genus);

}  // namespace seifert::volumes

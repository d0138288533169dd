#include "seifert/volumes.hpp"

#include "seifert/error.hpp"
#include "seifert/kernels.hpp"
#include "seifert/matrix.hpp"
#include "seifert/parallel.hpp"
#include "seifert/torsion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

namespace seifert::volumes {

namespace {

constexpr const char* kNonConvergent = "non-convergent regime; component is 0-dimensional or empty";

/// Per-class tables for the Weyl character formula at e^X.
struct ClassTable {
  std::int64_t den = 1;
  std::size_t order = 0;
  int rank = 0;
  std::size_t singular = 0;           // positive roots with alpha(X) in Z
  std::vector<std::int64_t> phase;    // [w][l]: sum_j M_w[j][l] omega_j(X) den, reduced mod den
  std::vector<double> slope;          // [w][alpha][l]: <w mu, alpha> = sum_l slope mu_l
  std::vector<double> sign;
  std::complex<double> denominator;

  std::complex<double> numerator(const std::vector<long>& mu, std::vector<std::int64_t>& nums,
                                 std::vector<double>& weights) const {
    nums.resize(order);
    weights.resize(order);
    for (std::size_t w = 0; w < order; ++w) {
      const std::int64_t* ph = &phase[w * rank];
      std::int64_t acc = 0;
      for (int l = 0; l < rank; ++l) acc = (acc + (ph[l] * mu[l]) % den) % den;
      nums[w] = acc;
      double weight = sign[w];
      for (std::size_t a = 0; a < singular; ++a) {
        const double* sl = &slope[(w * singular + a) * rank];
        double pair = 0.0;
        for (int l = 0; l < rank; ++l) pair += sl[l] * static_cast<double>(mu[l]);
        weight *= pair;
      }
      weights[w] = weight;
    }
    return kernels::weighted_phase_sum(nums.data(), weights.data(), order, den);
  }

  std::complex<double> character(const std::vector<long>& mu, std::vector<std::int64_t>& nums,
                                 std::vector<double>& weights) const {
    return numerator(mu, nums, weights) / denominator;
  }
};

ClassTable make_table(const lie::RootSystem& rs, const lie::WeylGroup& weyl, const lie::AlcoveClass& u) {
  ClassTable t;
  t.rank = rs.rank;
  t.order = weyl.order();
  const int r = rs.rank;
  const RationalVector omega = lie::fundamental_weight_values(rs, u.coords);
  Integer den = 1;
  for (const auto& w : omega) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(w));
  if (den > Integer(1) << 40) throw InputError("alcove", "u", "class denominator too large");
  t.den = den.convert_to<std::int64_t>();
  std::vector<std::int64_t> w_num(r);
  for (int j = 0; j < r; ++j) {
    const Rational scaled = omega[j] * Rational(den);
    std::int64_t v = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>() % t.den;
    w_num[j] = v < 0 ? v + t.den : v;
  }
  std::vector<std::vector<double>> beta;  // <omega_j, alpha> for singular alpha
  for (const auto& root : rs.positive_roots) {
    if (!is_integer(lie::root_value(root, u))) continue;
    std::vector<double> b(r);
    for (int j = 0; j < r; ++j) b[j] = to_double(root[j] * rs.inner_product(j, j) / 2);
    beta.push_back(std::move(b));
  }
  t.singular = beta.size();
  t.phase.assign(t.order * r, 0);
  t.slope.assign(t.order * t.singular * r, 0.0);
  t.sign.resize(t.order);
  for (std::size_t w = 0; w < t.order; ++w) {
    const auto& m = weyl.matrices[w];
    t.sign[w] = weyl.signs[w];
    for (int l = 0; l < r; ++l) {
      std::int64_t acc = 0;
      for (int j = 0; j < r; ++j) acc = (acc + (m[j * r + l] % t.den + t.den) % t.den * w_num[j]) % t.den;
      t.phase[w * r + l] = acc;
      for (std::size_t a = 0; a < t.singular; ++a) {
        double s = 0.0;
        for (int j = 0; j < r; ++j) s += static_cast<double>(m[j * r + l]) * beta[a][j];
        t.slope[(w * t.singular + a) * r + l] = s;
      }
    }
  }
  std::vector<std::int64_t> nums;
  std::vector<double> weights;
  t.denominator = t.numerator(std::vector<long>(r, 1), nums, weights);
  if (std::abs(t.denominator) < 1e-300) throw AlgebraError("character", "vanishing Weyl denominator");
  return t;
}

/// All mu = lambda + rho (coordinates >= 1) with mu^T G mu <= bound, in lexicographic order.
/// Entries of G are positive, so the norm grows in every coordinate.
std::vector<std::vector<long>> shifted_dominant_weights(const Matrix<double>& gram, double bound) {
  const std::size_t r = gram.rows();
  std::vector<std::vector<long>> out;
  std::vector<long> mu(r, 1);
  auto norm = [&](const std::vector<long>& v) {
    double s = 0.0;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) s += gram(a, b) * static_cast<double>(v[a] * v[b]);
    return s;
  };
  std::function<void(std::size_t)> scan = [&](std::size_t i) {
    if (i == r) {
      out.push_back(mu);
      return;
    }
    for (long c = 1;; ++c) {
      mu[i] = c;
      for (std::size_t k = i + 1; k < r; ++k) mu[k] = 1;
      if (norm(mu) > bound) break;
      scan(i + 1);
    }
    mu[i] = 1;
  };
  scan(0);
  return out;
}

// Slowest polynomial decay of the weight sum over the faces of the dominant
// chamber: on the face where the simple roots in J stay bounded, terms fall
// off like |mu|^{-decay_J} on an (r - |J|)-dimensional set, with the roots
// supported on J and the roots integral at each class not contributing.
long slowest_rate(const lie::RootSystem& rs, const std::vector<lie::AlcoveClass>& u, long exponent) {
  const int r = rs.rank;
  long best = std::numeric_limits<long>::max();
  for (unsigned mask = 0; mask + 1 < (1u << r); ++mask) {
    long decay = 0;
    for (const auto& root : rs.positive_roots) {
      bool inside = true;
      for (int l = 0; l < r; ++l)
        if (root[l] != 0 && !(mask >> l & 1u)) inside = false;
      if (inside) continue;
      decay += exponent;
      for (const auto& ui : u)
        if (is_integer(lie::root_value(root, ui))) --decay;
    }
    best = std::min(best, decay - (r - std::popcount(mask)));
  }
  return best;
}

double shifted_norm(const Matrix<double>& gram, const std::vector<long>& mu) {
  double s = 0.0;
  for (std::size_t a = 0; a < gram.rows(); ++a)
    for (std::size_t b = 0; b < gram.cols(); ++b) s += gram(a, b) * static_cast<double>(mu[a] * mu[b]);
  return s;
}

}  // namespace

std::complex<double> character(const lie::RootSystem& rs, const std::vector<long>& lambda, const lie::AlcoveClass& u) {
  lie::require_alcove(rs, u);
  if (static_cast<int>(lambda.size()) != rs.rank) throw InputError("weight", "lambda", "weight has the wrong rank");
  const auto table = make_table(rs, lie::weyl_group(rs), u);
  std::vector<long> mu(lambda);
  for (auto& c : mu) {
    if (c < 0) throw InputError("weight", "lambda", "weight is not dominant");
    c += 1;
  }
  std::vector<std::int64_t> nums;
  std::vector<double> weights;
  return table.character(mu, nums, weights);
}

VolumeResult witten_volume(int genus, const lie::RootSystem& rs, const std::vector<lie::AlcoveClass>& u_in,
                           long truncation, double scale) {
  if (genus < 0) throw InputError("genus", "genus", "genus must be >= 0");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("scale", "scale", "scale must be a positive number");
  for (const auto& ui : u_in) lie::require_alcove(rs, ui);
  std::vector<lie::AlcoveClass> u(u_in);
  std::sort(u.begin(), u.end());

  const int dim = component_dimension(genus, rs, u);
  if (dim <= 0) throw ConvergenceError("u", kNonConvergent);
  const long exponent = 2L * genus - 2 + static_cast<long>(u.size());
  const int r = rs.rank;
  const long rate = r >= 2 ? slowest_rate(rs, u, exponent) : 0;
  if (r >= 2 && rate <= 0)
    throw ConvergenceError("u", "weight sum is not absolutely convergent for rank " + std::to_string(r) +
                                    " (decay rate " + std::to_string(rate) + ")");

  const Matrix<double> gram = to_double(lie::weight_gram(rs));
  const double rho_norm = shifted_norm(gram, std::vector<long>(r, 1));
  if (static_cast<double>(truncation) < rho_norm - 1e-9)
    throw InputError("truncation", "truncation",
                     "truncation must be at least <rho, rho> = " + std::to_string(rho_norm));

  const auto weyl = lie::weyl_group(rs);
  std::vector<ClassTable> tables;
  for (const auto& ui : u) tables.push_back(make_table(rs, weyl, ui));

  const auto mus = shifted_dominant_weights(gram, static_cast<double>(truncation) + 1e-9);
  // d_lambda = prod <mu, a> / <rho, a> in double
  std::vector<std::vector<double>> pairing;
  std::vector<double> rho_pair;
  for (const auto& root : rs.positive_roots) {
    std::vector<double> c(r);
    double rp = 0.0;
    for (int l = 0; l < r; ++l) rp += c[l] = to_double(root[l] * rs.inner_product(l, l));
    pairing.push_back(std::move(c));
    rho_pair.push_back(rp);
  }

  std::vector<double> terms(mus.size()), magnitudes(mus.size());
  parallel_for(mus.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> nums;
    std::vector<double> weights;
    for (std::size_t k = begin; k < end; ++k) {
      const auto& mu = mus[k];
      double d = 1.0;
      for (std::size_t a = 0; a < pairing.size(); ++a) {
        double s = 0.0;
        for (int l = 0; l < r; ++l) s += pairing[a][l] * static_cast<double>(mu[l]);
        d *= s / rho_pair[a];
      }
      std::complex<double> prod = 1.0;
      for (const auto& t : tables) prod *= t.character(mu, nums, weights);
      const double denom = std::pow(d, static_cast<double>(exponent));
      terms[k] = prod.real() / denom;
      magnitudes[k] = std::abs(prod) / denom;
    }
  });
  const double sum = kernels::compensated_sum(terms.data(), terms.size());

  // tail of the weight sum beyond the truncation
  double tail = 0.0;
  if (r == 1) {
    const double dmax = mus.empty() ? 1.0 : static_cast<double>(mus.back()[0]);
    double c = 1.0;
    long central = 0, minus_one = 0;
    double theta = 0.0;
    for (const auto& ui : u) {
      const double x = to_double(ui.coords[0]);
      if (lie::is_central(rs, ui)) {
        ++central;
        if (ui.coords[0] != 0) ++minus_one;
      } else {
        c /= std::sin(std::numbers::pi * x);
        theta = x;
      }
    }
    const long e = exponent - central;
    if (e >= 2) {
      tail = c * std::pow(dmax, static_cast<double>(1 - e)) / static_cast<double>(e - 1);
    } else {
      // one regular class, genus 1: a sine series, bounded by Abel summation
      const double half = std::abs(std::sin(std::numbers::pi * (theta + static_cast<double>(minus_one)) / 2.0));
      tail = c / ((dmax + 1.0) * half);
    }
  } else {
    // geometric extrapolation of the outer shell (T/4, T] at the slowest face rate
    double shell = 0.0, total = 0.0;
    for (std::size_t i = 0; i < mus.size(); ++i) {
      total += magnitudes[i];
      if (shifted_norm(gram, mus[i]) > static_cast<double>(truncation) / 4.0) shell += magnitudes[i];
    }
    tail = shell > 0.0 ? 2.0 * shell / (std::pow(2.0, static_cast<double>(rate)) - 1.0) : total;
  }

  double factor = kWittenConstant * lie::center_order(rs) * std::pow(2.0 * std::numbers::pi, -dim) *
                  std::pow(lie::group_volume(rs), static_cast<double>(exponent));
  for (const auto& ui : u) factor *= lie::delta(rs, ui) / lie::centralizer_volume(rs, ui);
  factor *= std::pow(scale, dim / 2.0);

  VolumeResult out;
  out.value = factor * sum;
  out.truncation = truncation;
  out.terms = mus.size();
  out.tail_estimate = std::abs(factor) * tail;
  out.normalization.scale = scale;
  return out;
}

VolumeResult reidemeister_volume(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label,
                                 long truncation, double scale) {
  if (label.dim <= 0) throw ConvergenceError("label", kNonConvergent);
  const auto pre = torsion_prefactor(s, rs, label);
  auto out = witten_volume(s.genus, rs, label.u, truncation, scale);
  out.value *= pre.value;
  out.tail_estimate *= pre.value;
  return out;
}

namespace {

void require_nonzero_euler(const SeifertData& s) {
  if (euler_number(s) == 0) throw InputError("euler_zero", "seifert", "Q infinite; paper hypothesis violated (chi = 0)");
}

}  // namespace

AbelianComponentSet abelian_components(const SeifertData& s) {
  require_nonzero_euler(s);
  AbelianComponentSet out;
  out.euler = euler_number(s);
  const std::size_t n = s.n();
  long lcm = 1;
  for (const auto& pr : s.pairs) lcm = std::lcm(lcm, pr.p);
  // v = j / N with N = |chi lcm(p)|; u_i = (q_i j + k_i N) / (N p_i)
  const Rational nq = out.euler * Rational(lcm);
  const long big_n = std::abs(boost::multiprecision::numerator(nq).convert_to<long>());
  std::vector<long> k(n, 0);
  for (long j = 0; j < big_n; ++j) {
    std::fill(k.begin(), k.end(), 0);
    for (;;) {
      // sum_i (q_i j + k_i N) lcm / p_i must be divisible by N lcm
      __int128 acc = 0;
      for (std::size_t i = 0; i < n; ++i)
        acc += static_cast<__int128>(s.pairs[i].q * j + k[i] * big_n) * (lcm / s.pairs[i].p);
      if (acc % (static_cast<__int128>(big_n) * lcm) == 0) {
        AbelianLabel label;
        label.v = make_rational(j, big_n);
        for (std::size_t i = 0; i < n; ++i) {
          const Rational a = make_rational(s.pairs[i].q * j + k[i] * big_n, big_n * s.pairs[i].p);
          label.u.push_back(frac(a));
        }
        out.labels.push_back(std::move(label));
      }
      std::size_t pos = n;
      while (pos > 0 && ++k[pos - 1] == s.pairs[pos - 1].p) k[--pos] = 0;
      if (pos == 0) break;
    }
  }
  std::sort(out.labels.begin(), out.labels.end(), [](const AbelianLabel& a, const AbelianLabel& b) {
    if (a.v != b.v) return a.v < b.v;
    return lex_less(a.u, b.u);
  });
  return out;
}

Rational abelian_torsion_scalar(const SeifertData& s) {
  require_nonzero_euler(s);
  Rational prod = 1;
  for (const auto& pr : s.pairs) prod *= pr.p;
  return euler_number(s) * prod;
}

double abelian_density_factor(const SeifertData& s) {
  const Rational t = abelian_torsion_scalar(s);
  return 1.0 / std::sqrt(std::abs(to_double(t)));
}

Rational abelian_mv_verify(const SeifertData& s, int genus) {
  using M = Matrix<Rational>;
  if (genus < 0) throw InputError("genus", "genus", "genus must be >= 0");
  require_nonzero_euler(s);
  const std::size_t n = s.n();
  const std::size_t g2 = 2 * static_cast<std::size_t>(genus);
  const std::size_t h1 = n - 1 + g2;  // H_1(Sigma) basis (c_1 .. c_{n-1}, a_1, b_1, .., a_g, b_g)

  // f : R^n -> H_1(Sigma), boundary circles c_i with c_n = -(c_1 + .. + c_{n-1})
  M f(h1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    f(i, i) = 1;
    f(i, n - 1) = -1;
  }
  // sigma: the handle classes, spanning a complement of im f
  M sigma(h1, g2);
  for (std::size_t j = 0; j < g2; ++j) sigma(n - 1 + j, j) = 1;

  // 0 -> R -> R^n -f-> H_1(Sigma) -h-> H_2(X) -> 0, split at im f (based by f(e_1) .. f(e_{n-1}))
  M ones(n, 1);
  for (std::size_t i = 0; i < n; ++i) ones(i, 0) = 1;
  M onto_image(n - 1, n);  // R^n -> im f in the basis f(e_i), i < n
  for (std::size_t i = 0; i + 1 < n; ++i) {
    onto_image(i, i) = 1;
    onto_image(i, n - 1) = -1;
  }
  M image_basis = f.columns(0, n - 1);
  M h = hcat(M(g2, n - 1), M::identity(g2));  // H_1(Sigma) -> H_2(X) in the basis h(sigma)
  const Rational d1 = torsion::exact_sequence_det(ones, onto_image, 0.0) *
                      torsion::exact_sequence_det(image_basis, h, 0.0);

  // 0 -> R^{2n} -B-> R^n + H_1(Sigma) + R -A-> H_1(X) -> 0, domain ordered (y, x)
  const std::size_t rows = n + h1 + 1;
  M b(rows, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = s.pairs[i].p;
    b(i, n + i) = s.pairs[i].q;
    b(rows - 1, i) = 1;
  }
  b.set_block(n, n, f);
  M section(rows, g2);
  section.set_block(n, 0, sigma);
  M a = inverse(hcat(b, section)).block(2 * n, 0, g2, rows);
  torsion::exact_sequence_det(b, a, 0.0);  // checks exactness
  const Rational d2 = determinant(hcat(b, section));

  // 0 -> R^n -C-> R^n + R -> R -> 0, C(x) = (x, x_1 + .. + x_n)
  M c(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = 1;
    c(n, i) = 1;
  }
  M last(1, n + 1);
  for (std::size_t i = 0; i < n; ++i) last(0, i) = -1;
  last(0, n) = 1;
  const Rational d3 = torsion::exact_sequence_det(c, last, 0.0);

  return d2 / (d1 * d3);
}

}  // namespace seifert::volumes

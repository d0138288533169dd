#pragma once

#include "seifert/lie.hpp"
#include "seifert/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace seifert {

struct SeifertPair {
  long p = 1;
  long q = 0;

  bool operator==(const SeifertPair&) const = default;
};

/// Seifert invariants (g; (p_1, q_1), ..., (p_n, q_n)).
struct SeifertData {
  int genus = 0;
  std::vector<SeifertPair> pairs;

  std::size_t n() const { return pairs.size(); }
};

/// Checks genus >= 0, n >= 1, p_i >= 1 and gcd(p_i, |q_i|) = 1.
SeifertData validate_seifert(int genus, const std::vector<SeifertPair>& pairs);

/// Parses "g=0; (2,1),(3,1),(5,1)" and validates it.
SeifertData parse_seifert(const std::string& text);

std::string to_string(const SeifertData& s);

/// -sum q_i / p_i.
Rational euler_number(const SeifertData& s);

/// Smallest r >= 0 with q r = 1 mod p; 0 when p = 1.
long inverse_mod(long q, long p);

enum class Occupancy { Empty, Unknown };

struct ComponentLabel {
  std::vector<lie::AlcoveClass> u;
  lie::CentralElement v;
  int dim = 0;
  Occupancy occupancy = Occupancy::Unknown;
};

/// 2 (g - 1) dim G + sum dim u_i.
int component_dimension(int genus, const lie::RootSystem& rs, const std::vector<lie::AlcoveClass>& u);

/// All alcove classes u with u^p = [target], target central. Sorted.
std::vector<lie::AlcoveClass> power_roots(const lie::RootSystem& rs, long p, const lie::AlcoveClass& target);

/// Calls emit for every label of P in lexicographic (v, u) order.
void for_each_component(const SeifertData& s, const lie::RootSystem& rs,
                        const std::function<void(const ComponentLabel&)>& emit);

std::vector<ComponentLabel> enumerate_components(const SeifertData& s, const lie::RootSystem& rs);

/// Re-checks u_i^{p_i} = v^{q_i} for every i.
bool satisfies_relations(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label);

struct PrefactorValue {
  double value = 1.0;
  std::optional<Rational> exact_square;
};

/// prod_i Delta(u_i^{r_i}) / p_i^{dim V_i / 2}. The r_i default to
/// inverse_mod(q_i, p_i); any other inverses may be passed.
PrefactorValue torsion_prefactor(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label,
                                 const std::vector<long>& r = {});

}  // namespace seifert

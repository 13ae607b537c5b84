#pragma once

#include "mpde/char_roots.hpp"
#include "mpde/rational.hpp"
#include "mpde/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpde {

struct GevreyData {
  Rational s1, s2;  // orders of m1, m2
  Rational t1, t2;  // declared Gevrey orders of the right-hand side
};

struct Level {
  Rational q;
  Rational K;  // 1/(q (s2 + t2) - s1)
  std::size_t branch;  // index into the branch list
};

struct LevelSet {
  bool applicable = false;        // s2 + t2 > 0
  Rational threshold;             // max{s1, s1 + t1} / (s2 + t2)
  std::vector<Level> levels;      // (K_N, ..., K_1): K decreasing, q increasing
  std::optional<Rational> tilde_K;  // 1/t1 when t1 > 0 and some pole order is below the threshold
  int n_tilde = 0;                // number of root classes (zero roots count as one)
};

LevelSet levels(const std::vector<CharBranch>& branches, int zero_roots, const GevreyData& g);

struct SectorRequirement {
  char var = 'z';  // 't' or 'z'
  double dir = 0.0;  // radians in [0, 2 pi)
  std::optional<Rational> dir_over_pi;  // exact when the direction is a known rational multiple of pi
  Rational growth;
  int alpha = 0;  // 1-based branch index, ordered by decreasing q
  int beta = 0;   // 1-based leading-term index (0 for t-sectors)
  int k = 0;      // residue 0..mu-1
  bool disc_replacement = false;  // t-sector may be replaced by a disc
};

/// Sectors on which G must extend with exponential growth: for each branch
/// with level K, each leading term lambda0 and k = 0..mu-1 (q = mu/nu), the z-sector
/// bisected by ((d + arg lambda0 + 2 k pi)/q) mod 2 pi with growth q K, plus the
/// t-sector (d, K).
/// `direction` is one angle per listed level (same order) or a single angle for all.
std::vector<SectorRequirement> required_sectors(const std::vector<CharBranch>& branches, const LevelSet& lv,
                                                const std::vector<double>& directions, const GevreyData& g);

enum class SummabilityCase { simple_sum_I, simple_sum_II, sum_I, sum_II, multi1_I, multi1_II, none };
std::string to_string(SummabilityCase c);

struct Hypothesis {
  std::string name;
  bool holds;
};

struct AdmissibilityResult {
  bool admissible = true;
  std::vector<double> margins;  // pi (1/k_j - 1/k_{j-1})/2 - |d_j - d_{j-1}|
};

/// Levels k_1 > ... > k_n with directions (d_1, ..., d_n); decided exactly with
/// rational enclosures of pi.
AdmissibilityResult admissible(const std::vector<double>& directions, const std::vector<Rational>& levels);

struct SummabilityReport {
  SummabilityCase which = SummabilityCase::none;
  std::vector<Level> levels;  // (K_N, ..., K_1), or the single level of the case
  std::optional<Rational> tilde_K;
  bool iff = false;
  std::vector<SectorRequirement> sectors;
  std::vector<Hypothesis> hypotheses;
  bool admissible = true;
  std::vector<double> admissibility_margins;
  std::vector<std::string> requirements;  // textual conditions on transformed right-hand sides
};

SummabilityReport classify(const std::vector<CharBranch>& branches, int zero_roots, const GevreyData& g,
                           const std::vector<double>& directions);

enum class ProbeStatus { found, none, inconclusive };

struct ProbeResult {
  ProbeStatus status = ProbeStatus::inconclusive;
  std::vector<double> directions;  // estimated singular directions in [0, 2 pi)
  Complex limit_ratio{0.0, 0.0};
  std::string note;
};

/// Domb-Sykes estimate of the nearest singularity of sum_j b_j tau^j with
/// b_j = u_j(z_eval) / Gamma(1 + j/K); the singular direction is -arg(lim b_{j+1}/b_j).
ProbeResult singular_direction_probe(const Series2<Complex>& u, const Rational& K, Complex z_eval);

}  // namespace mpde

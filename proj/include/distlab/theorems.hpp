#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "distlab/energy.hpp"
#include "distlab/spectral.hpp"

namespace distlab {

/// HOLDS / VIOLATED are reserved for constant-explicit inequalities; claims
/// with hidden big-O or o(1) constants are always REPORT_ONLY.
enum class Verdict { HOLDS, VIOLATED, REPORT_ONLY };

std::string to_string(Verdict v);

struct CheckParams {
    std::string field;
    std::uint64_t q = 0;
    std::size_t d = 0;
    int k = 0;  // 0 when the claim has no k
    std::uint64_t size_e = 0;
    std::uint64_t size_f = 0;  // 0 when single-set
    std::string generator;
    std::uint64_t seed = 0;
};

/// One theorem/lemma instance. lhs, main_term and deviation are exact
/// rationals; floats appear only in ratio and in bounds with irrational
/// factors. For deviation-form claims |lhs - main| <= bound the ratio is
/// deviation / bound; for lower-bound claims lhs >= bound it is lhs / bound.
struct BoundReport {
    std::string name;
    CheckParams params;
    std::vector<std::pair<std::string, bool>> hypotheses;
    Rat lhs = 0;
    Rat main_term = 0;
    Rat deviation = 0;
    std::optional<Rat> bound_exact;  // set when the bound is rational
    double bound = 0.0;
    double ratio = 0.0;
    std::vector<std::pair<std::string, double>> extras;
    Verdict verdict = Verdict::REPORT_ONLY;

    bool all_hypotheses_hold() const;

    nlohmann::ordered_json to_json() const;
    std::string csv_row() const;  // name,q,d,k,size_E,size_F,ratio,verdict
    static std::string csv_header();
};

// --- Individual claim checks -------------------------------------------

/// |distance_set(E)| vs min{q, |E| / q^((d-1)/2)}; hidden constant, so
/// always REPORT_ONLY. Flags |E| >= q^(d/2).
BoundReport check_iosevich_rudnev(const PointSet& E);

/// First-energy bound |E|^4/q + (1+sqrt(3)) q |E|^(5/2) in the plane under
/// q = 3 mod 4 and |E| >= q (proxy for the paper's |E| >> q). Explicit
/// constant: HOLDS/VIOLATED when the hypotheses are met, REPORT_ONLY
/// otherwise. The irrational comparison is done exactly by repeated
/// squaring, with a 1e-9 relative float fallback.
BoundReport check_koh_sun_2d(const PointSet& E);

/// First-energy bound |E|^4/q + q^d |E|^2 for d >= 3; all-integer
/// comparison, unconditional HOLDS/VIOLATED.
BoundReport check_koh_sun_highd(const PointSet& E);

/// Recursion |E_k - |E|^(4k)/q| <= sqrt(2) q^d |E|^2 E_(k-1), the explicit
/// constant assembled from the mixing lemma and the sum-product graph
/// second-eigenvalue bound. k >= 2. HOLDS/VIOLATED; also reports the raw
/// big-O ratio without the sqrt(2).
BoundReport check_recursion(const PointSet& E, int k);

/// k-fold energy deviation vs q^(2k-1) |E|^(2k+1/2) (d = 2, REPORT_ONLY).
BoundReport check_energy_2d(const PointSet& E, int k);

/// k-fold energy deviation vs q^(dk) |E|^(2k) (d >= 3, REPORT_ONLY).
BoundReport check_energy_highd(const PointSet& E, int k);

/// Records |k_sumset|, the saturation fraction |k_sumset|/q, and asserts
/// the exact Cauchy-Schwarz lower bound |E|^(4k) / energy(E,E,k). Threshold
/// flags: |E| vs q^(1+1/(4k-1)) for d = 2, q^(d/2+1/(2k)) for d >= 3.
BoundReport check_sumset(const PointSet& E, int k);

/// Asymmetric-energy report for |E| <= |F| (inputs are swapped if needed;
/// the energy is symmetric in the two sets). Reports the applicable
/// first-energy and combined k = 2 bounds as ratios; for k >= 2
/// additionally asserts the asymmetric recursion with the explicit sqrt(2)
/// constant.
BoundReport check_asymmetric(const PointSet& E, const PointSet& F, int k);

/// |Delta(E,F) + Delta(E,F)| >= (1/3) min{q, |E||F|^2/q^(3d/2),
/// |E||F|/q^(d-1)}; the constant is explicit, so HOLDS/VIOLATED with the
/// half-integer power compared exactly by squaring.
BoundReport check_shparlinski_sumset(const PointSet& E, const PointSet& F);

// --- Sweep runner --------------------------------------------------------

struct GeneratorGrid {
    std::string type;                  // random | sphere | product | full
    std::vector<std::string> sizes;    // random: size expressions
    std::vector<std::string> sizes_f;  // optional second-set sizes
    std::vector<std::uint64_t> radii;  // sphere: element indices
    std::vector<std::uint64_t> widths; // product: first-w elements per axis
};

struct SweepConfig {
    std::vector<std::string> fields;
    std::vector<std::size_t> dims;
    std::vector<int> ks;
    std::vector<GeneratorGrid> generators;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> checks;
    int jobs = 1;
};

/// Size expressions: a plain integer, "full", or "[c*]q[^(a/b)]" rounded up,
/// e.g. "q", "q/2", "4*q^(8/7)". Values are clamped only by the generation
/// guards; q^d is available as "full".
std::uint64_t eval_size_expr(const std::string& expr, std::uint64_t q, std::size_t d);

SweepConfig parse_sweep_config(const nlohmann::json& j);

/// Runs the grid fields x dims x ks x generators x sizes x seeds x checks in
/// that nesting order. Checks whose dimension/k preconditions do not apply
/// to an instance are skipped. Reports come back in grid order regardless
/// of the number of jobs, and the stream is a pure function of the config.
std::vector<BoundReport> sweep(const SweepConfig& config);

}  // namespace distlab

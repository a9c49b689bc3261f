#include "distlab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace distlab {

namespace {

Int q_pow(std::uint64_t q, unsigned e) { return int_pow(Int(q), e); }

CheckParams base_params(const PointSet& E, const PointSet* F, int k) {
    CheckParams p;
    p.field = E.field().spec_string();
    p.q = E.field().q();
    p.d = E.dim();
    p.k = k;
    p.size_e = E.size();
    p.size_f = F ? F->size() : 0;
    p.generator = F && F->label() != E.label() ? E.label() + "|" + F->label() : E.label();
    return p;
}

/// E_+^1 .. E_+^k of the pair-distance counts of (E, F).
std::vector<Int> energy_ladder(const PointSet& E, const PointSet& F, int k) {
    MultiplicityVector nu = distance_multiplicities(E, F);
    MultiplicityVector fold = nu;
    std::vector<Int> out;
    out.push_back(fold.sum_squares());
    for (int j = 2; j <= k; ++j) {
        fold = additive_convolution(fold, nu);
        out.push_back(fold.sum_squares());
    }
    return out;
}

/// Exact test of D <= sqrt(2) R for nonnegative integers; a 1e-9 relative
/// float fallback protects margins below integer-squaring resolution.
bool le_sqrt2_times(const Int& D, const Int& R) {
    if (D * D <= 2 * R * R) return true;
    return to_double(D) <= std::sqrt(2.0) * to_double(R) * (1.0 + 1e-9);
}

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return "HOLDS";
        case Verdict::VIOLATED: return "VIOLATED";
        default: return "REPORT_ONLY";
    }
}

bool BoundReport::all_hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(),
                       [](const auto& h) { return h.second; });
}

nlohmann::ordered_json BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    nlohmann::ordered_json p;
    p["field"] = params.field;
    p["q"] = params.q;
    p["d"] = params.d;
    p["k"] = params.k;
    p["size_E"] = params.size_e;
    p["size_F"] = params.size_f;
    p["generator"] = params.generator;
    p["seed"] = params.seed;
    j["params"] = std::move(p);
    nlohmann::ordered_json hyp = nlohmann::ordered_json::object();
    for (const auto& [key, val] : hypotheses) hyp[key] = val;
    j["hypotheses"] = std::move(hyp);
    j["lhs"] = to_decimal(lhs);
    j["main_term"] = to_decimal(main_term);
    j["deviation"] = to_decimal(deviation);
    j["bound"] = bound;
    if (bound_exact) j["bound_exact"] = to_decimal(*bound_exact);
    j["ratio"] = ratio;
    if (!extras.empty()) {
        nlohmann::ordered_json ex;
        for (const auto& [key, val] : extras) ex[key] = val;
        j["extras"] = std::move(ex);
    }
    j["verdict"] = to_string(verdict);
    return j;
}

std::string BoundReport::csv_header() { return "name,q,d,k,size_E,size_F,ratio,verdict"; }

std::string BoundReport::csv_row() const {
    return name + "," + std::to_string(params.q) + "," + std::to_string(params.d) + "," +
           std::to_string(params.k) + "," + std::to_string(params.size_e) + "," +
           std::to_string(params.size_f) + "," + nlohmann::json(ratio).dump() + "," +
           to_string(verdict);
}

BoundReport check_iosevich_rudnev(const PointSet& E) {
    BoundReport r;
    r.name = "iosevich_rudnev_distance";
    r.params = base_params(E, nullptr, 0);
    const std::uint64_t q = r.params.q;
    const std::size_t d = r.params.d;
    const Int delta_size = Int(distance_set(E, E).size());

    // |E| >> q^(d/2) proxied by |E|^2 >= q^d, compared in integers.
    r.hypotheses.emplace_back("size_E^2 >= q^d",
                              Int(E.size()) * Int(E.size()) >= q_pow(q, static_cast<unsigned>(d)));

    r.lhs = Rat(delta_size);
    r.deviation = r.lhs;  // lower-bound form
    double min_term;
    if (d % 2 == 1) {
        const Rat candidate(Int(E.size()), q_pow(q, static_cast<unsigned>((d - 1) / 2)));
        const Rat bound = std::min(Rat(q), candidate);
        r.bound_exact = bound;
        min_term = to_double(bound);
    } else {
        min_term = std::min(static_cast<double>(q),
                            static_cast<double>(E.size()) /
                                std::pow(static_cast<double>(q), (static_cast<double>(d) - 1) / 2));
    }
    r.bound = min_term;
    r.ratio = safe_ratio(to_double(r.lhs), r.bound);
    r.verdict = Verdict::REPORT_ONLY;
    return r;
}

BoundReport check_koh_sun_2d(const PointSet& E) {
    if (E.dim() != 2) throw WrongDimension("planar first-energy bound needs d = 2");
    BoundReport r;
    r.name = "koh_sun_first_energy_2d";
    r.params = base_params(E, nullptr, 1);
    const std::uint64_t q = r.params.q;
    const Int size(E.size());
    const Int e1 = energy(E, E, 1);

    r.hypotheses.emplace_back("q = 3 mod 4", E.field().residue_mod4() == 3);
    r.hypotheses.emplace_back("size_E >= q", size >= q);

    r.lhs = Rat(e1);
    r.main_term = Rat(int_pow(size, 4), Int(q));
    r.deviation = r.lhs - r.main_term;  // nonnegative: E_1 >= |E|^4/q

    const double err_term = (1.0 + std::sqrt(3.0)) * static_cast<double>(q) *
                            std::pow(to_double(size), 2.5);
    r.bound = to_double(r.main_term) + err_term;
    r.ratio = safe_ratio(to_double(r.deviation), err_term);

    // q E_1 - |E|^4 <= (1+sqrt(3)) q^2 |E|^2 sqrt(|E|), resolved exactly by
    // squaring twice; the float fallback only rescues sub-1e-9 margins.
    const Int A = Int(q) * e1 - int_pow(size, 4);
    const Int B = Int(q) * Int(q) * size * size;
    bool ineq;
    const Int C = A * A - 4 * B * B * size;
    if (C <= 0) {
        ineq = true;
    } else if (C * C <= 12 * int_pow(B, 4) * size * size) {
        ineq = true;
    } else {
        ineq = to_double(r.lhs) <= r.bound * (1.0 + 1e-9);
    }
    if (!r.all_hypotheses_hold())
        r.verdict = Verdict::REPORT_ONLY;
    else
        r.verdict = ineq ? Verdict::HOLDS : Verdict::VIOLATED;
    return r;
}

BoundReport check_koh_sun_highd(const PointSet& E) {
    if (E.dim() < 3) throw WrongDimension("high-dimensional first-energy bound needs d >= 3");
    BoundReport r;
    r.name = "koh_sun_first_energy_highd";
    r.params = base_params(E, nullptr, 1);
    const std::uint64_t q = r.params.q;
    const unsigned d = static_cast<unsigned>(r.params.d);
    const Int size(E.size());
    const Int e1 = energy(E, E, 1);

    r.lhs = Rat(e1);
    r.main_term = Rat(int_pow(size, 4), Int(q));
    r.deviation = r.lhs - r.main_term;
    const Int err = q_pow(q, d) * size * size;
    r.bound_exact = r.main_term + Rat(err);
    r.bound = to_double(*r.bound_exact);
    r.ratio = safe_ratio(to_double(r.deviation), to_double(err));
    // All-integer comparison after clearing q.
    r.verdict = (Int(q) * e1 <= int_pow(size, 4) + Int(q) * err) ? Verdict::HOLDS
                                                                 : Verdict::VIOLATED;
    return r;
}

BoundReport check_recursion(const PointSet& E, int k) {
    if (k < 2) throw InvalidK(k, 2);
    BoundReport r;
    r.name = "energy_recursion";
    r.params = base_params(E, nullptr, k);
    const std::uint64_t q = r.params.q;
    const unsigned d = static_cast<unsigned>(r.params.d);
    const Int size(E.size());

    const auto ladder = energy_ladder(E, E, k);
    const Int ek = ladder[static_cast<std::size_t>(k) - 1];
    const Int ek1 = ladder[static_cast<std::size_t>(k) - 2];

    r.lhs = Rat(ek);
    r.main_term = Rat(int_pow(size, 4 * static_cast<unsigned>(k)), Int(q));
    r.deviation = rat_abs(r.lhs - r.main_term);

    const Int scale = q_pow(q, d) * size * size * ek1;  // q^d |E|^2 E_(k-1)
    r.bound = std::sqrt(2.0) * to_double(scale);
    r.ratio = safe_ratio(to_double(r.deviation), r.bound);
    r.extras.emplace_back("big_o_ratio", safe_ratio(to_double(r.deviation), to_double(scale)));

    const Int D = boost::multiprecision::abs(Int(q) * ek - int_pow(size, 4 * static_cast<unsigned>(k)));
    r.verdict = le_sqrt2_times(D, Int(q) * scale) ? Verdict::HOLDS : Verdict::VIOLATED;
    return r;
}

namespace {

BoundReport energy_deviation_report(const PointSet& E, int k, bool planar) {
    if (k < 2) throw InvalidK(k, 2);
    BoundReport r;
    r.params = base_params(E, nullptr, k);
    const std::uint64_t q = r.params.q;
    const Int size(E.size());
    const Int ek = energy(E, E, k);

    r.lhs = Rat(ek);
    r.main_term = Rat(int_pow(size, 4 * static_cast<unsigned>(k)), Int(q));
    r.deviation = rat_abs(r.lhs - r.main_term);

    if (planar) {
        r.name = "energy_deviation_2d";
        r.hypotheses.emplace_back("q = 3 mod 4", E.field().residue_mod4() == 3);
        r.hypotheses.emplace_back("size_E >= q", size >= q);
        const double b = to_double(q_pow(q, 2 * static_cast<unsigned>(k) - 1) *
                                   int_pow(size, 2 * static_cast<unsigned>(k))) *
                         std::sqrt(to_double(size));
        r.bound = b;
    } else {
        r.name = "energy_deviation_highd";
        const Int b = q_pow(q, static_cast<unsigned>(r.params.d) * static_cast<unsigned>(k)) *
                      int_pow(size, 2 * static_cast<unsigned>(k));
        r.bound_exact = Rat(b);
        r.bound = to_double(b);
    }
    r.ratio = safe_ratio(to_double(r.deviation), r.bound);
    r.verdict = Verdict::REPORT_ONLY;
    return r;
}

}  // namespace

BoundReport check_energy_2d(const PointSet& E, int k) {
    if (E.dim() != 2) throw WrongDimension("planar energy deviation needs d = 2");
    return energy_deviation_report(E, k, true);
}

BoundReport check_energy_highd(const PointSet& E, int k) {
    if (E.dim() < 3) throw WrongDimension("high-dimensional energy deviation needs d >= 3");
    return energy_deviation_report(E, k, false);
}

BoundReport check_sumset(const PointSet& E, int k) {
    if (k < 1) throw InvalidK(k, 1);
    BoundReport r;
    r.name = "sumset_saturation";
    r.params = base_params(E, nullptr, k);
    const std::uint64_t q = r.params.q;
    const std::size_t d = r.params.d;
    const Int size(E.size());
    const unsigned uk = static_cast<unsigned>(k);

    const Int sumset_size(k_sumset(E, k).size());
    const Int ek = energy(E, E, k);

    if (d == 2) {
        // |E| >= q^(1 + 1/(4k-1))  <=>  |E|^(4k-1) >= q^(4k)
        r.hypotheses.emplace_back("size_E >= q^(1+1/(4k-1))",
                                  int_pow(size, 4 * uk - 1) >= q_pow(q, 4 * uk));
    } else if (d >= 3) {
        // |E| >= q^(d/2 + 1/(2k))  <=>  |E|^(2k) >= q^(dk+1)
        r.hypotheses.emplace_back(
            "size_E >= q^(d/2+1/(2k))",
            int_pow(size, 2 * uk) >= q_pow(q, static_cast<unsigned>(d) * uk + 1));
    }

    r.lhs = Rat(sumset_size);
    r.deviation = r.lhs;  // lower-bound form
    const Rat cs_bound(int_pow(size, 4 * uk), ek);
    r.bound_exact = cs_bound;
    r.bound = to_double(cs_bound);
    r.ratio = safe_ratio(to_double(r.lhs), r.bound);
    r.extras.emplace_back("saturation_fraction",
                          to_double(Rat(sumset_size, Int(q))));
    // Exact Cauchy-Schwarz assertion: |kD| * E_k >= |E|^(4k).
    r.verdict = (sumset_size * ek >= int_pow(size, 4 * uk)) ? Verdict::HOLDS : Verdict::VIOLATED;
    return r;
}

BoundReport check_asymmetric(const PointSet& E_in, const PointSet& F_in, int k) {
    if (k < 1) throw InvalidK(k, 1);
    const bool swap = E_in.size() > F_in.size();
    const PointSet& E = swap ? F_in : E_in;
    const PointSet& F = swap ? E_in : F_in;

    BoundReport r;
    r.name = "asymmetric_energy";
    r.params = base_params(E, &F, k);
    const std::uint64_t q = r.params.q;
    const std::size_t d = r.params.d;
    const unsigned uk = static_cast<unsigned>(k);
    const Int se(E.size()), sf(F.size());

    const auto ladder = energy_ladder(E, F, k);
    const Int ek = ladder.back();

    r.lhs = Rat(ek);
    r.main_term = Rat(int_pow(se * sf, 2 * uk), Int(q));
    r.deviation = rat_abs(r.lhs - r.main_term);

    const bool planar = d == 2 && E.field().residue_mod4() == 3;
    const bool odd_high = d >= 3 && d % 2 == 1;
    r.hypotheses.emplace_back("d = 2 and q = 3 mod 4 (planar bounds)", planar);
    r.hypotheses.emplace_back("odd d >= 3 (odd-dimension bounds)", odd_high);

    const double dse = to_double(se), dsf = to_double(sf), dq = static_cast<double>(q);
    if (k == 1) {
        const double e1 = to_double(ek);
        if (planar) {
            const double b = dse * dse * dsf * dsf / dq + dq * std::pow(dse, 1.5) * dsf;
            r.extras.emplace_back("ratio_e1_planar", safe_ratio(e1, b));
        }
        if (odd_high) {
            const double b = dse * dse * dsf * dsf / dq +
                             std::pow(dq, (static_cast<double>(d) - 1) / 2) * dse * dse * dsf;
            r.extras.emplace_back("ratio_e1_odd_dim", safe_ratio(e1, b));
        }
    }
    if (k == 2) {
        const double dev = to_double(r.deviation);
        const double cube = dse * dse * dse * dsf * dsf * dsf;
        if (planar) {
            const double b = dq * cube + dq * dq * dq * std::pow(dse, 2.5) * dsf * dsf;
            r.extras.emplace_back("ratio_k2_planar", safe_ratio(dev, b));
        }
        if (odd_high) {
            const double b = std::pow(dq, static_cast<double>(d) - 1) * cube +
                             std::pow(dq, (3.0 * static_cast<double>(d) - 1) / 2) * dse * dse *
                                 dse * dsf * dsf;
            r.extras.emplace_back("ratio_k2_odd_dim", safe_ratio(dev, b));
        }
        const double b_gen = std::pow(dq, static_cast<double>(d) - 1) * cube +
                             std::pow(dq, 3.0 * static_cast<double>(d) / 2) * dse * dse * dse *
                                 dsf * dsf;
        r.extras.emplace_back("ratio_k2_general", safe_ratio(dev, b_gen));
    }

    if (k >= 2) {
        // Asymmetric recursion with the explicit sqrt(2) constant.
        const Int ek1 = ladder[static_cast<std::size_t>(k) - 2];
        const Int scale = q_pow(q, static_cast<unsigned>(d)) * se * sf * ek1;
        r.bound = std::sqrt(2.0) * to_double(scale);
        r.ratio = safe_ratio(to_double(r.deviation), r.bound);
        const Int D = boost::multiprecision::abs(Int(q) * ek - int_pow(se * sf, 2 * uk));
        r.verdict = le_sqrt2_times(D, Int(q) * scale) ? Verdict::HOLDS : Verdict::VIOLATED;
    } else {
        r.verdict = Verdict::REPORT_ONLY;
    }
    return r;
}

BoundReport check_shparlinski_sumset(const PointSet& E, const PointSet& F) {
    BoundReport r;
    r.name = "shparlinski_double_sumset";
    r.params = base_params(E, &F, 2);
    const std::uint64_t q = r.params.q;
    const unsigned d = static_cast<unsigned>(r.params.d);
    const FieldSpec& f = E.field();
    const Int se(E.size()), sf(F.size());

    // Delta(E,F) + Delta(E,F) inside (F_q, +).
    const auto delta = distance_set(E, F);
    std::vector<char> hit(q, 0);
    for (const auto& a : delta)
        for (const auto& b : delta) hit[f.add_index(a.index(), b.index())] = 1;
    Int lhs = 0;
    for (char c : hit) lhs += c;

    r.lhs = Rat(lhs);
    r.deviation = r.lhs;  // lower-bound form

    // min{q, |E||F|^2 / q^(3d/2), |E||F| / q^(d-1)} / 3.
    const Int z = 3 * lhs;
    const bool ge_t1 = z >= q;
    const Int num2 = se * sf * sf;
    bool ge_t2;
    double t2;
    if (d % 2 == 0) {
        ge_t2 = z * q_pow(q, 3 * d / 2) >= num2;
        t2 = to_double(Rat(num2, q_pow(q, 3 * d / 2)));
    } else {
        ge_t2 = z * z * q_pow(q, 3 * d) >= num2 * num2;
        t2 = to_double(num2) / std::pow(static_cast<double>(q), 1.5 * d);
    }
    const Int num3 = se * sf;
    const bool ge_t3 = z * q_pow(q, d - 1) >= num3;
    const double t3 = to_double(Rat(num3, q_pow(q, d - 1)));

    const double min_term = std::min({static_cast<double>(q), t2, t3});
    r.bound = min_term / 3.0;
    r.ratio = safe_ratio(to_double(lhs), r.bound);
    r.verdict = (ge_t1 || ge_t2 || ge_t3) ? Verdict::HOLDS : Verdict::VIOLATED;
    return r;
}

// --- Sweep ----------------------------------------------------------------

std::uint64_t eval_size_expr(const std::string& expr, std::uint64_t q, std::size_t d) {
    std::string s;
    for (char c : expr)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty size expression");

    if (s == "full") {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < d; ++i) {
            if (r > kAmbientGuard) break;
            r *= q;
        }
        return r;
    }
    // Plain integer.
    if (s.find('q') == std::string::npos) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
            throw ConfigError("bad size expression '" + expr + "'");
        return v;
    }
    // [c*] q [^(a/b)] [/div]
    long double coeff = 1.0L;
    std::size_t pos = 0;
    const std::size_t star = s.find('*');
    if (star != std::string::npos) {
        try {
            std::size_t used = 0;
            coeff = std::stold(s.substr(0, star), &used);
            if (used != star) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad coefficient in size expression '" + expr + "'");
        }
        pos = star + 1;
    }
    if (pos >= s.size() || s[pos] != 'q')
        throw ConfigError("size expression '" + expr + "' must contain q");
    ++pos;
    long double exponent = 1.0L;
    if (pos < s.size() && s[pos] == '^') {
        if (pos + 1 >= s.size() || s[pos + 1] != '(')
            throw ConfigError("expected ^(a/b) in '" + expr + "'");
        const std::size_t close = s.find(')', pos);
        if (close == std::string::npos) throw ConfigError("unbalanced exponent in '" + expr + "'");
        const std::string inner = s.substr(pos + 2, close - pos - 2);
        const std::size_t slash = inner.find('/');
        try {
            if (slash == std::string::npos) {
                exponent = std::stold(inner);
            } else {
                exponent = std::stold(inner.substr(0, slash)) / std::stold(inner.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw ConfigError("bad exponent in size expression '" + expr + "'");
        }
        pos = close + 1;
    }
    long double div = 1.0L;
    if (pos < s.size()) {
        if (s[pos] != '/') throw ConfigError("unexpected suffix in size expression '" + expr + "'");
        try {
            div = std::stold(s.substr(pos + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad divisor in size expression '" + expr + "'");
        }
    }
    const long double v = coeff * std::pow(static_cast<long double>(q), exponent) / div;
    if (!(v >= 1.0L) || v > 1e18L) throw ConfigError("size expression '" + expr + "' out of range");
    const long double nearest = std::nearbyint(v);
    const long double rounded = std::abs(v - nearest) < 1e-9L ? nearest : std::ceil(v);
    return static_cast<std::uint64_t>(rounded);
}

namespace {

const std::vector<std::string> kCheckNames = {
    "iosevich_rudnev", "koh_sun_2d", "koh_sun_highd", "recursion", "energy_2d",
    "energy_highd",    "sumset",     "asymmetric",    "shparlinski_sumset"};

bool check_uses_k(const std::string& name) {
    return name == "recursion" || name == "energy_2d" || name == "energy_highd" ||
           name == "sumset" || name == "asymmetric";
}

bool check_needs_second_set(const std::string& name) {
    return name == "asymmetric" || name == "shparlinski_sumset";
}

constexpr std::uint64_t kSecondSetSeedSalt = 0x517cc1b727220a95ULL;

struct Instance {
    FieldPtr field;
    std::size_t d;
    int k;
    bool first_k;
    const GeneratorGrid* gen;
    std::size_t entry;
    std::uint64_t seed;
};

PointSet build_set(const Instance& in) {
    const GeneratorGrid& g = *in.gen;
    if (g.type == "random")
        return PointSet::random(in.field, in.d,
                                eval_size_expr(g.sizes[in.entry], in.field->q(), in.d), in.seed);
    if (g.type == "sphere")
        return PointSet::sphere(in.field, in.d,
                                in.field->from_index(g.radii[in.entry] % in.field->q()));
    if (g.type == "product") {
        const std::uint64_t w = std::min<std::uint64_t>(g.widths[in.entry], in.field->q());
        std::vector<FieldElement> vals;
        for (std::uint64_t i = 0; i < w; ++i) vals.push_back(in.field->from_index(i));
        return PointSet::product(in.field, vals, in.d);
    }
    if (g.type == "full") return PointSet::full_grid(in.field, in.d);
    throw ConfigError("unknown generator '" + g.type + "'");
}

PointSet build_second_set(const Instance& in, const PointSet& E) {
    const GeneratorGrid& g = *in.gen;
    if (g.type != "random") return E;
    const std::string& expr =
        in.entry < g.sizes_f.size() ? g.sizes_f[in.entry] : g.sizes[in.entry];
    return PointSet::random(in.field, in.d, eval_size_expr(expr, in.field->q(), in.d),
                            in.seed ^ kSecondSetSeedSalt);
}

std::optional<BoundReport> run_check(const std::string& name, const PointSet& E,
                                     const PointSet* F, int k) {
    try {
        if (name == "iosevich_rudnev") return check_iosevich_rudnev(E);
        if (name == "koh_sun_2d") return check_koh_sun_2d(E);
        if (name == "koh_sun_highd") return check_koh_sun_highd(E);
        if (name == "recursion") return check_recursion(E, k);
        if (name == "energy_2d") return check_energy_2d(E, k);
        if (name == "energy_highd") return check_energy_highd(E, k);
        if (name == "sumset") return check_sumset(E, k);
        if (name == "asymmetric") return check_asymmetric(E, *F, k);
        if (name == "shparlinski_sumset") return check_shparlinski_sumset(E, *F);
    } catch (const WrongDimension&) {
        return std::nullopt;  // grid combination does not apply
    } catch (const InvalidK&) {
        return std::nullopt;
    }
    throw ConfigError("unknown check '" + name + "'");
}

}  // namespace

SweepConfig parse_sweep_config(const nlohmann::json& j) {
    SweepConfig cfg;
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        cfg.fields = j.at("fields").get<std::vector<std::string>>();
        cfg.dims = j.at("dims").get<std::vector<std::size_t>>();
        cfg.checks = j.at("checks").get<std::vector<std::string>>();
        if (j.contains("ks")) cfg.ks = j.at("ks").get<std::vector<int>>();
        if (cfg.ks.empty()) cfg.ks = {1};
        if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
        for (const auto& gj : j.at("generators")) {
            GeneratorGrid g;
            g.type = gj.at("type").get<std::string>();
            if (gj.contains("sizes")) g.sizes = gj.at("sizes").get<std::vector<std::string>>();
            if (gj.contains("sizes_f"))
                g.sizes_f = gj.at("sizes_f").get<std::vector<std::string>>();
            if (gj.contains("radii"))
                g.radii = gj.at("radii").get<std::vector<std::uint64_t>>();
            if (gj.contains("widths"))
                g.widths = gj.at("widths").get<std::vector<std::uint64_t>>();
            cfg.generators.push_back(std::move(g));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad sweep config: ") + e.what());
    }

    for (const auto& name : cfg.checks)
        if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end())
            throw ConfigError("unknown check '" + name + "'");
    for (const auto& g : cfg.generators) {
        if (g.type == "random") {
            if (g.sizes.empty()) throw ConfigError("random generator needs sizes");
            if (cfg.seeds.empty()) throw ConfigError("random generator needs seeds");
        } else if (g.type == "sphere") {
            if (g.radii.empty()) throw ConfigError("sphere generator needs radii");
        } else if (g.type == "product") {
            if (g.widths.empty()) throw ConfigError("product generator needs widths");
        } else if (g.type != "full") {
            throw ConfigError("unknown generator '" + g.type + "'");
        }
    }
    if (cfg.seeds.empty()) cfg.seeds = {0};
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    return cfg;
}

std::vector<BoundReport> sweep(const SweepConfig& cfg) {
    std::vector<Instance> instances;
    for (const auto& field_str : cfg.fields) {
        FieldPtr field = FieldSpec::parse(field_str);
        for (std::size_t d : cfg.dims) {
            bool first_k = true;
            for (int k : cfg.ks) {
                for (const auto& gen : cfg.generators) {
                    std::size_t entries = 1;
                    if (gen.type == "random") entries = gen.sizes.size();
                    else if (gen.type == "sphere") entries = gen.radii.size();
                    else if (gen.type == "product") entries = gen.widths.size();
                    for (std::size_t e = 0; e < entries; ++e)
                        for (std::uint64_t seed : cfg.seeds)
                            instances.push_back(Instance{field, d, k, first_k, &gen, e, seed});
                }
                first_k = false;
            }
        }
    }

    const bool want_second =
        std::any_of(cfg.checks.begin(), cfg.checks.end(), check_needs_second_set);

    std::vector<std::vector<BoundReport>> buckets(instances.size());
    #pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances.size()); ++i) {
        const Instance& in = instances[static_cast<std::size_t>(i)];
        const PointSet E = build_set(in);
        std::optional<PointSet> F;
        if (want_second) F = build_second_set(in, E);
        for (const auto& name : cfg.checks) {
            if (check_uses_k(name)) {
                // k-dependent checks run for every k in the grid
            } else if (!in.first_k) {
                continue;  // k-independent checks once per (field, d)
            }
            auto rep = run_check(name, E, F ? &*F : nullptr, in.k);
            if (!rep) continue;
            rep->params.seed = in.seed;
            buckets[static_cast<std::size_t>(i)].push_back(std::move(*rep));
        }
    }

    std::vector<BoundReport> out;
    for (auto& b : buckets)
        for (auto& rep : b) out.push_back(std::move(rep));
    return out;
}

}  // namespace distlab

// distlab: exact distance-set experiments over finite fields.
//
// Subcommands: field-check, gen, energy, spectral, verify. Exit codes:
// 0 success, 1 a constant-explicit claim was VIOLATED, 2 usage/guard error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "distlab/energy.hpp"
#include "distlab/spectral.hpp"
#include "distlab/theorems.hpp"

using namespace distlab;

namespace {

std::optional<std::vector<std::uint32_t>> parse_modulus(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<std::uint32_t> coeffs;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string piece = csv.substr(start, comma - start);
        try {
            coeffs.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
        } catch (const std::exception&) {
            throw ConfigError("bad modulus coefficient '" + piece + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return coeffs;
}

int default_jobs() {
    if (const char* env = std::getenv("DISTLAB_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << text;
}

int run_field_check(const std::string& field, const std::string& modulus) {
    FieldPtr f = FieldSpec::parse(field, parse_modulus(modulus));
    std::cout << "field: " << f->spec_string() << "\n"
              << "q: " << f->q() << "\n"
              << "p: " << f->p() << "\n"
              << "m: " << f->m() << "\n"
              << "q mod 4: " << f->residue_mod4() << "\n";
    if (f->m() > 1) {
        std::cout << "modulus:";
        for (std::uint32_t c : f->modulus()) std::cout << " " << c;
        std::cout << (f->has_default_modulus() ? " (default)" : " (explicit)") << "\n";
    }
    return 0;
}

int run_gen(const std::string& field, const std::string& modulus, std::size_t dim,
            const std::string& gen, std::uint64_t size, std::uint64_t radius,
            std::uint64_t width, std::uint64_t seed, const std::string& out) {
    FieldPtr f = FieldSpec::parse(field, parse_modulus(modulus));
    std::optional<PointSet> e;
    if (gen == "random") {
        e = PointSet::random(f, dim, size, seed);
    } else if (gen == "sphere") {
        e = PointSet::sphere(f, dim, f->from_index(radius % f->q()));
    } else if (gen == "product") {
        std::vector<FieldElement> vals;
        for (std::uint64_t i = 0; i < std::min(width, f->q()); ++i)
            vals.push_back(f->from_index(i));
        e = PointSet::product(f, vals, dim);
    } else if (gen == "full") {
        e = PointSet::full_grid(f, dim);
    } else {
        throw ConfigError("unknown generator '" + gen + "'");
    }
    e->save_csv(out);
    std::cerr << "wrote " << e->size() << " points to " << out << "\n";
    return 0;
}

int run_energy(const std::string& in, const std::string& in2, int k, const std::string& out) {
    PointSet e = PointSet::load_csv(in);
    std::optional<PointSet> f2;
    if (!in2.empty()) f2 = PointSet::load_csv(in2);
    const PointSet& g = f2 ? *f2 : e;
    const FieldSpec& f = e.field();

    MultiplicityVector nu = distance_multiplicities(e, g);
    MultiplicityVector fold = nu;
    for (int i = 1; i < k; ++i) fold = additive_convolution(fold, nu);
    const Int ek = fold.sum_squares();

    nlohmann::ordered_json j;
    j["field"] = f.spec_string();
    if (f.m() > 1) j["modulus"] = f.modulus();
    j["d"] = e.dim();
    j["k"] = k;
    j["size_E"] = e.size();
    j["size_F"] = g.size();
    nlohmann::ordered_json nu_arr = nlohmann::ordered_json::array();
    for (std::uint64_t i = 0; i < nu.size(); ++i) nu_arr.push_back(to_decimal(nu[i]));
    j["nu"] = std::move(nu_arr);
    nlohmann::ordered_json fold_arr = nlohmann::ordered_json::array();
    for (std::uint64_t i = 0; i < fold.size(); ++i) fold_arr.push_back(to_decimal(fold[i]));
    j["N"] = std::move(fold_arr);
    j["energy"] = to_decimal(ek);
    nlohmann::ordered_json sumset;
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (std::uint64_t idx : fold.support()) values.push_back(f.from_index(idx).str());
    sumset["size"] = values.size();
    sumset["values"] = std::move(values);
    j["sumset"] = std::move(sumset);
    j["cs_bound"] = to_decimal(
        Rat(int_pow(Int(e.size()) * Int(g.size()), 2 * static_cast<unsigned>(k)), ek));
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int run_spectral(const std::string& field, const std::string& modulus, std::size_t dim,
                 const std::string& out) {
    FieldPtr f = FieldSpec::parse(field, parse_modulus(modulus));
    SumProductGraph g = SumProductGraph::build(f, dim);
    Spectrum s = spectrum(g);
    write_text(out, spectral_report(g, s).dump(2) + "\n");
    return 0;
}

int run_verify(const std::string& config_path, int jobs_flag, const std::string& out,
               const std::string& summary) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config '" + config_path + "'");
    nlohmann::json cfg_json;
    try {
        in >> cfg_json;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    SweepConfig cfg = parse_sweep_config(cfg_json);
    if (jobs_flag >= 1)
        cfg.jobs = jobs_flag;
    else if (!cfg_json.contains("jobs"))
        cfg.jobs = default_jobs();

    const auto reports = sweep(cfg);
    std::string lines;
    std::string csv = BoundReport::csv_header() + "\n";
    bool violated = false;
    for (const auto& r : reports) {
        lines += r.to_json().dump() + "\n";
        csv += r.csv_row() + "\n";
        violated = violated || r.verdict == Verdict::VIOLATED;
    }
    write_text(out, lines);
    if (!summary.empty()) write_text(summary, csv);
    return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact distance-set experiments over finite fields"};
    app.require_subcommand(1);

    std::string field, modulus, gen = "random", in, in2, out, summary, config;
    std::size_t dim = 2;
    std::uint64_t size = 1, radius = 0, width = 1, seed = 0;
    int k = 1, jobs = -1;

    auto* fc = app.add_subcommand("field-check", "validate a field spec and print it");
    fc->add_option("field", field, "field spec, q or p^m")->required();
    fc->add_option("--modulus", modulus, "modulus coefficients c0,c1,...,1");

    auto* gn = app.add_subcommand("gen", "generate a point set CSV");
    gn->add_option("--field", field)->required();
    gn->add_option("--modulus", modulus);
    gn->add_option("--dim", dim)->required();
    gn->add_option("--gen", gen, "random|sphere|product|full");
    gn->add_option("--size", size, "random: number of points");
    gn->add_option("--radius", radius, "sphere: element index of r");
    gn->add_option("--width", width, "product: first w field elements per axis");
    gn->add_option("--seed", seed);
    gn->add_option("--out", out)->required();

    auto* en = app.add_subcommand("energy", "exact energy/sumset report for a point set");
    en->add_option("--in", in, "point set CSV")->required();
    en->add_option("--in2", in2, "second point set CSV (asymmetric)");
    en->add_option("--k", k)->required();
    en->add_option("--out", out, "output JSON path (default stdout)");

    auto* sp = app.add_subcommand("spectral", "build and certify a sum-product graph");
    sp->add_option("--field", field)->required();
    sp->add_option("--modulus", modulus);
    sp->add_option("--dim", dim)->required();
    sp->add_option("--out", out, "output JSON path (default stdout)");

    auto* vf = app.add_subcommand("verify", "run a sweep config, emit JSON-lines reports");
    vf->add_option("--config", config)->required();
    vf->add_option("--jobs", jobs, "parallel sweep tasks (default $DISTLAB_JOBS or 1)");
    vf->add_option("--out", out, "JSONL output path (default stdout)");
    vf->add_option("--summary", summary, "also write a summary CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (fc->parsed()) return run_field_check(field, modulus);
        if (gn->parsed()) return run_gen(field, modulus, dim, gen, size, radius, width, seed, out);
        if (en->parsed()) return run_energy(in, in2, k, out);
        if (sp->parsed()) return run_spectral(field, modulus, dim, out);
        if (vf->parsed()) return run_verify(config, jobs, out, summary);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

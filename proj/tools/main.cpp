#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_io.hpp"
#include "corrlab/correlation.hpp"
#include "corrlab/decomposition.hpp"
#include "corrlab/gauge.hpp"
#include "corrlab/gowers.hpp"
#include "corrlab/multiplicative.hpp"
#include "corrlab/quadform.hpp"
#include "corrlab/recurrence.hpp"
#include "corrlab/util.hpp"

using nlohmann::json;
using namespace corrlab;
using namespace corrlab_cli;

namespace {

constexpr int kExitNoWitness = 2;

struct Globals {
    std::string output;
    std::string format = "json";
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

void emit(const Globals& g, const json& doc) {
    std::string text = g.format == "csv" ? render_csv(doc) : doc.dump(2) + "\n";
    if (g.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file: " + g.output);
        out << text;
    }
}

CyclicSignal random_disk_signal(std::uint64_t modulus, std::uint64_t seed) {
    CyclicSignal f(modulus);
    Rng rng(seed);
    for (auto& z : f.values) z = rng.disk();
    return f;
}

GowersMethod method_from(const std::string& name) {
    if (name == "direct") return GowersMethod::direct;
    if (name == "fourier") return GowersMethod::fourier;
    return GowersMethod::recursive;
}

QuadraticForm form_from(const std::string& text) {
    auto v = parse_int_list(text, 6);
    return QuadraticForm{v[0], v[1], v[2], v[3], v[4], v[5]};
}

Coloring coloring_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coloring file: " + path);
    std::vector<int> cells;
    int c = 0;
    int top = 0;
    while (in >> c) {
        if (c < 0) throw std::invalid_argument("coloring cells must be >= 0");
        cells.push_back(c);
        top = std::max(top, c);
    }
    if (cells.empty()) throw std::invalid_argument("empty coloring file: " + path);
    return Coloring(static_cast<std::int64_t>(cells.size()), top + 1, std::move(cells));
}

FiniteSystem system_from_spec(const std::string& spec, std::uint64_t seed) {
    if (spec.rfind("random:", 0) == 0) {
        std::string rest = spec.substr(7);
        for (auto& c : rest)
            if (c == ':') c = ',';
        auto v = parse_int_list(rest, 2);
        if (v[0] < 1) throw std::invalid_argument("system size must be >= 1");
        std::size_t s = static_cast<std::size_t>(v[0]);
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(v[1])));
        auto shuffle = [&] {
            std::vector<std::uint32_t> p(s);
            for (std::size_t i = 0; i < s; ++i) p[i] = static_cast<std::uint32_t>(i);
            for (std::size_t i = s; i > 1; --i)
                std::swap(p[i - 1], p[rng.below(i)]);
            return p;
        };
        std::vector<double> w(s, 1.0 / static_cast<double>(s));
        return FiniteSystem(std::move(w), shuffle(), shuffle());
    }
    json j = read_json_file(spec);
    return FiniteSystem(j.at("weights").get<std::vector<double>>(),
                        j.at("T").get<std::vector<std::uint32_t>>(),
                        j.at("S").get<std::vector<std::uint32_t>>());
}

std::vector<cplx> cplx_array(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return out;
}

std::vector<cplx> random_cplx(std::size_t n, std::uint64_t seed) {
    std::vector<cplx> out(n);
    Rng rng(seed);
    for (auto& z : out) z = rng.disk();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale experiments on cyclic averages, decompositions and searches"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--output", g.output, "write the result document to this path (default stdout)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", g.threads, "worker thread count (results are identical for any value)")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--seed", g.seed, "master seed for every internal random draw");

    json doc;
    int code = 0;

    // ---- gowers
    auto* sc_gowers = app.add_subcommand("gowers", "uniformity norms U^2 and U^3 of a signal");
    struct {
        std::string chi;
        std::int64_t N = 0;
        std::int64_t ell = 4;
        std::int64_t modulus = 0;
        std::int64_t random_modulus = 0;
        std::string method = "recursive";
    } gow;
    sc_gowers->add_option("--chi", gow.chi, "multiplicative function to truncate");
    sc_gowers->add_option("--N", gow.N, "truncation length");
    sc_gowers->add_option("--ell", gow.ell, "modulus parameter: modulus = least prime > 10*ell*N");
    sc_gowers->add_option("--modulus", gow.modulus, "explicit prime modulus (overrides --ell)");
    sc_gowers->add_option("--random-modulus", gow.random_modulus,
                          "skip truncation; use a seeded random 1-bounded signal of this length");
    sc_gowers->add_option("--method", gow.method, "norm evaluation route")
        ->check(CLI::IsMember({"direct", "recursive", "fourier"}));
    sc_gowers->callback([&] {
        set_thread_count(g.threads);
        CyclicSignal f(1);
        json chi_name, n_out;
        if (gow.random_modulus > 0) {
            f = random_disk_signal(static_cast<std::uint64_t>(gow.random_modulus), g.seed);
        } else {
            if (gow.chi.empty() || gow.N < 1)
                throw std::invalid_argument("gowers: need --chi and --N (or --random-modulus)");
            auto chi = parse_chi_spec(gow.chi);
            std::uint64_t M = gow.modulus > 0
                                  ? static_cast<std::uint64_t>(gow.modulus)
                                  : choose_modulus(static_cast<std::uint64_t>(gow.N),
                                                   static_cast<std::uint64_t>(gow.ell));
            f = chi.truncation(static_cast<std::uint64_t>(gow.N), M);
            chi_name = chi.name();
            n_out = gow.N;
        }
        auto rep = gowers_report(f, method_from(gow.method));
        doc = json{{"N", n_out},
                   {"chi", chi_name},
                   {"method", to_string(rep.method)},
                   {"modulus", f.modulus},
                   {"norm_u2", rep.norm_u2},
                   {"norm_u3", rep.norm_u3}};
    });

    // ---- forms-average
    auto* sc_forms = app.add_subcommand(
        "forms-average", "average of a_0(m) a_1(m+l1 n) a_2(m+l2 n) a_3(m+l3 n) over n in 1..N");
    struct {
        std::string chi;
        bool random = false;
        std::int64_t N = 0;
        std::string ells = "1,2,3";
        std::int64_t modulus = 0;
    } fa;
    sc_forms->add_option("--chi", fa.chi, "use four copies of this truncated multiplicative function");
    sc_forms->add_flag("--random", fa.random, "use four seeded random 1-bounded signals");
    sc_forms->add_option("--N", fa.N, "progression length")->required();
    sc_forms->add_option("--ells", fa.ells, "three distinct positive coefficients l1,l2,l3");
    sc_forms->add_option("--modulus", fa.modulus, "explicit prime modulus");
    sc_forms->callback([&] {
        set_thread_count(g.threads);
        auto ls = parse_int_list(fa.ells, 3);
        for (auto l : ls)
            if (l < 1) throw std::invalid_argument("forms-average: coefficients must be positive");
        std::uint64_t M =
            fa.modulus > 0
                ? static_cast<std::uint64_t>(fa.modulus)
                : choose_modulus(static_cast<std::uint64_t>(fa.N),
                                 static_cast<std::uint64_t>(ls[0] + ls[1] + ls[2] + 1));
        std::vector<CyclicSignal> a;
        if (fa.random == !fa.chi.empty())
            throw std::invalid_argument("forms-average: pass exactly one of --chi, --random");
        if (fa.random) {
            for (int i = 0; i < 4; ++i)
                a.push_back(random_disk_signal(M, split_seed(g.seed, static_cast<std::uint64_t>(i))));
        } else {
            auto chi = parse_chi_spec(fa.chi);
            a.assign(4, chi.truncation(static_cast<std::uint64_t>(fa.N), M));
        }
        auto rep = linear_forms_average(a[0], a[1], a[2], a[3], static_cast<std::uint64_t>(ls[0]),
                                        static_cast<std::uint64_t>(ls[1]),
                                        static_cast<std::uint64_t>(ls[2]),
                                        static_cast<std::uint64_t>(fa.N));
        doc = json{{"N", fa.N},
                   {"abs_value", std::abs(rep.value)},
                   {"c2_candidate", rep.bound_parts.c2_candidate
                                        ? json(*rep.bound_parts.c2_candidate)
                                        : json(nullptr)},
                   {"ells", ls},
                   {"min_u3_root", rep.bound_parts.min_u3_root},
                   {"modulus", M},
                   {"tail", rep.bound_parts.tail},
                   {"value_im", rep.value.imag()},
                   {"value_re", rep.value.real()}};
    });

    // ---- decompose
    auto* sc_dec = app.add_subcommand(
        "decompose", "structured + uniform + error split of a truncated multiplicative function");
    struct {
        std::string chi;
        std::int64_t N = 0;
        std::int64_t ell = 4;
        std::int64_t modulus = 0;
        std::int64_t Q = 1, K1 = 0, W1 = 0, K2 = 0, W2 = 0;
        int s = 3;
    } de;
    sc_dec->add_option("--chi", de.chi, "multiplicative function")->required();
    sc_dec->add_option("--N", de.N, "truncation length")->required();
    sc_dec->add_option("--ell", de.ell, "modulus parameter: modulus = least prime > 10*ell*N");
    sc_dec->add_option("--modulus", de.modulus, "explicit prime modulus (overrides --ell)");
    sc_dec->add_option("--Q", de.Q, "progression step of the structured kernel");
    sc_dec->add_option("--K1", de.K1, "progression length, first kernel (0 = floor(sqrt(modulus)))");
    sc_dec->add_option("--W1", de.W1, "Fejer width, first kernel (0 = floor(sqrt(modulus)))");
    sc_dec->add_option("--K2", de.K2, "progression length, second kernel (0 = K1)");
    sc_dec->add_option("--W2", de.W2, "Fejer width, second kernel (0 = W1)");
    sc_dec->add_option("--s", de.s, "uniformity order measured on the uniform part")
        ->check(CLI::IsMember({2, 3}));
    sc_dec->callback([&] {
        set_thread_count(g.threads);
        auto chi = parse_chi_spec(de.chi);
        std::uint64_t M = de.modulus > 0
                              ? static_cast<std::uint64_t>(de.modulus)
                              : choose_modulus(static_cast<std::uint64_t>(de.N),
                                               static_cast<std::uint64_t>(de.ell));
        std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(M)));
        while (root * root > M) --root;
        while ((root + 1) * (root + 1) <= M) ++root;
        DecompositionParams p;
        p.Q = static_cast<std::uint64_t>(de.Q);
        p.K1 = de.K1 > 0 ? static_cast<std::uint64_t>(de.K1) : root;
        p.W1 = de.W1 > 0 ? static_cast<std::uint64_t>(de.W1) : root;
        p.K2 = de.K2 > 0 ? static_cast<std::uint64_t>(de.K2) : p.K1;
        p.W2 = de.W2 > 0 ? static_cast<std::uint64_t>(de.W2) : p.W1;
        auto dec = decompose(chi, static_cast<std::uint64_t>(de.N), M, p);
        auto diag = diagnostics(dec, de.s);
        doc = json{{"N", de.N},
                   {"chi", chi.name()},
                   {"l1_er", diag.l1_er},
                   {"lipschitz_Q", diag.lipschitz_Q},
                   {"modulus", M},
                   {"params",
                    json{{"K1", p.K1}, {"K2", p.K2}, {"Q", p.Q}, {"W1", p.W1}, {"W2", p.W2}}},
                   {"sup_er", dec.er.sup_norm()},
                   {"sup_st", dec.st.sup_norm()},
                   {"sup_un", dec.un.sup_norm()},
                   {"u2_un", diag.u2_un},
                   {"u3_un", diag.u3_un ? json(*diag.u3_un) : json(nullptr)}};
    });

    // ---- prcheck
    auto* sc_pr = app.add_subcommand(
        "prcheck", "admissibility, monochromatic-solution search and finite regularity checks");
    struct {
        std::string form;
        int r = 0;
        std::int64_t N = 0;
        std::string coloring;
        std::int64_t uniform_n = 0;
        std::int64_t search_n = 0;
        std::string form2;
        std::int64_t x_max = 10, sim_n = 10, k_max = 10;
    } pr;
    sc_pr->add_option("--form", pr.form, "coefficients a,b,c,d,e,f of a x^2+b y^2+c n^2+d xy+e xn+f yn")
        ->required();
    sc_pr->add_option("--r", pr.r, "number of cells for the exhaustive regularity check");
    sc_pr->add_option("--N", pr.N, "range [1..N] for the exhaustive regularity check");
    sc_pr->add_option("--coloring", pr.coloring, "coloring file: line i = cell of integer i");
    sc_pr->add_option("--uniform", pr.uniform_n, "use the single-cell coloring of [1..n]");
    sc_pr->add_option("--search-n", pr.search_n, "search monochromatic solutions with n up to this");
    sc_pr->add_option("--form2", pr.form2, "second form: search simultaneous quotient witnesses");
    sc_pr->add_option("--x-max", pr.x_max, "simultaneous search bound on x, y, x', y'");
    sc_pr->add_option("--sim-n", pr.sim_n, "simultaneous search bound on n, n'");
    sc_pr->add_option("--k-max", pr.k_max, "simultaneous search bound on the common divisor k");
    sc_pr->callback([&] {
        set_thread_count(g.threads);
        auto p1 = form_from(pr.form);
        auto d = discriminants(p1);
        doc = json{{"admissible", is_admissible(p1)},
                   {"discriminants", json::array({d.d1, d.d2, d.d3})}};
        if (pr.r > 0 || pr.N > 0) {
            if (pr.r < 2 || pr.N < 1)
                throw std::invalid_argument("prcheck: exhaustive check needs --r >= 2 and --N >= 1");
            auto res = exhaustive_pr_check(p1, pr.r, pr.N);
            doc["nodes_visited"] = res.nodes_visited;
            doc["regular"] = res.regular;
            doc["counterexample"] =
                res.counterexample ? json(res.counterexample->cells) : json(nullptr);
        }
        std::optional<Coloring> col;
        if (!pr.coloring.empty()) col = coloring_from_file(pr.coloring);
        else if (pr.uniform_n > 0) col = Coloring::uniform(pr.uniform_n);
        if (pr.search_n > 0) {
            if (!col) throw std::invalid_argument("prcheck: --search-n needs --coloring or --uniform");
            auto w = monochromatic_search(p1, *col, pr.search_n);
            doc["witness"] = w ? json{{"cell", w->cell}, {"n", w->n}, {"x", w->x}, {"y", w->y}}
                              : json(nullptr);
            if (!w) code = kExitNoWitness;
        }
        if (!pr.form2.empty()) {
            if (!col) throw std::invalid_argument("prcheck: --form2 needs --coloring or --uniform");
            auto p2 = form_from(pr.form2);
            SimultaneousBounds b{pr.x_max, pr.sim_n, pr.k_max};
            auto w = simultaneous_pr_search(p1, p2, *col, b);
            doc["simul_witness"] =
                w ? json{{"cell", w->cell},
                         {"k", w->k},
                         {"n", w->n},
                         {"np", w->np},
                         {"quotients", json::array({w->q1, w->q2, w->q3})},
                         {"x", w->x},
                         {"xp", w->xp},
                         {"y", w->y},
                         {"yp", w->yp}}
                  : json(nullptr);
            if (!w) code = kExitNoWitness;
        }
    });

    // ---- recurrence2
    auto* sc_r2 = app.add_subcommand(
        "recurrence2", "least (n, m) with m(m+l1 n) and (m+l2 n)(m+l3 n) distinct members of E");
    struct {
        std::string set;
        std::string pattern;
        std::int64_t m_max = 0, n_max = 0;
    } r2;
    sc_r2->add_option("--set", r2.set, "set spec: full:N | empty:N | multiples:k:N | random:d:s:N | file:P | hex:P")
        ->required();
    sc_r2->add_option("--pattern", r2.pattern, "coefficients l1,l2,l3")->required();
    sc_r2->add_option("--m-max", r2.m_max, "m range bound (default: the set's n_max)");
    sc_r2->add_option("--n-max", r2.n_max, "n range bound (default: the set's n_max)");
    sc_r2->callback([&] {
        set_thread_count(g.threads);
        auto E = parse_set_spec(r2.set);
        auto ls = parse_int_list(r2.pattern, 3);
        PatternTwoTerm pat{ls[0], ls[1], ls[2]};
        std::int64_t mm = r2.m_max > 0 ? r2.m_max : E.n_max;
        std::int64_t nm = r2.n_max > 0 ? r2.n_max : E.n_max;
        auto w = search_two_term(E, pat, mm, nm);
        doc = w ? json{{"found", true}, {"m", w->first}, {"n", w->second}}
                : json{{"found", false}, {"m", nullptr}, {"n", nullptr}};
        if (!w) code = kExitNoWitness;
    });

    // ---- recurrence3
    auto* sc_r3 = app.add_subcommand(
        "recurrence3", "least (n, m, n', m') whose three cross products are distinct members of E");
    struct {
        std::string set;
        std::string pattern;
        std::int64_t bounds = 10;
        std::int64_t m_max = 0, n_max = 0, mp_max = 0, np_max = 0;
    } r3;
    sc_r3->add_option("--set", r3.set, "set spec (same grammar as recurrence2)")->required();
    sc_r3->add_option("--pattern", r3.pattern, "coefficients l1,...,l7")->required();
    sc_r3->add_option("--bounds", r3.bounds, "common bound for m, n, m', n'");
    sc_r3->add_option("--m-max", r3.m_max, "override for m");
    sc_r3->add_option("--n-max", r3.n_max, "override for n");
    sc_r3->add_option("--mp-max", r3.mp_max, "override for m'");
    sc_r3->add_option("--np-max", r3.np_max, "override for n'");
    sc_r3->callback([&] {
        set_thread_count(g.threads);
        auto E = parse_set_spec(r3.set);
        auto ls = parse_int_list(r3.pattern, 7);
        PatternThreeTerm pat{ls[0], ls[1], ls[2], ls[3], ls[4], ls[5], ls[6]};
        ThreeTermBounds b;
        b.m_max = r3.m_max > 0 ? r3.m_max : r3.bounds;
        b.n_max = r3.n_max > 0 ? r3.n_max : r3.bounds;
        b.mp_max = r3.mp_max > 0 ? r3.mp_max : r3.bounds;
        b.np_max = r3.np_max > 0 ? r3.np_max : r3.bounds;
        auto w = search_three_term(E, pat, b);
        doc = w ? json{{"found", true},
                       {"m", w->m},
                       {"mp", w->mp},
                       {"n", w->n},
                       {"np", w->np},
                       {"products", json::array({w->products[0], w->products[1], w->products[2]})}}
                : json{{"found", false},
                       {"m", nullptr},
                       {"mp", nullptr},
                       {"n", nullptr},
                       {"np", nullptr},
                       {"products", nullptr}};
        if (!w) code = kExitNoWitness;
    });

    // ---- density
    auto* sc_den = app.add_subcommand(
        "density", "finite-stage multiplicative density estimates along prime-power boxes");
    struct {
        std::string set;
        std::string primes = "2,3";
        std::string exponents = "1,2,3,4";
        std::string ratio;
    } den;
    sc_den->add_option("--set", den.set, "set spec (membership domain must cover every box element)")
        ->required();
    sc_den->add_option("--primes", den.primes, "box primes");
    sc_den->add_option("--exponents", den.exponents, "box exponent for each stage");
    sc_den->add_option("--ratio", den.ratio, "also report each stage's dilation defect for a/b");
    sc_den->callback([&] {
        set_thread_count(g.threads);
        auto E = parse_set_spec(den.set);
        auto ps = parse_int_list(den.primes);
        auto es = parse_int_list(den.exponents);
        std::vector<std::uint64_t> primes;
        for (auto p : ps) {
            if (p < 2) throw std::invalid_argument("density: primes must be >= 2");
            primes.push_back(static_cast<std::uint64_t>(p));
        }
        std::optional<Rational> ratio;
        if (!den.ratio.empty()) {
            auto slash = den.ratio.find('/');
            std::int64_t num = std::stoll(den.ratio.substr(0, slash));
            std::int64_t denom =
                slash == std::string::npos ? 1 : std::stoll(den.ratio.substr(slash + 1));
            ratio = Rational{num, denom};
        }
        std::vector<FolnerSpec> specs;
        for (auto e : es) {
            if (e < 0) throw std::invalid_argument("density: exponents must be >= 0");
            specs.push_back(FolnerSpec{primes, static_cast<int>(e)});
        }
        json rows = json::array();
        for (std::size_t i = 0; i < specs.size(); ++i) {
            auto box = folner_set(specs[i]);
            if (static_cast<std::int64_t>(box.back()) > E.n_max)
                throw std::invalid_argument("density: box element exceeds the set's domain");
            std::int64_t inside = 0;
            for (auto v : box) inside += E.contains(static_cast<std::int64_t>(v)) ? 1 : 0;
            json row{{"estimate", static_cast<double>(inside) / static_cast<double>(box.size())},
                     {"exponent", es[i]},
                     {"size", box.size()}};
            if (ratio) row["defect"] = folner_defect(box, *ratio);
            rows.push_back(std::move(row));
        }
        doc = json{{"primes", ps}, {"rows", std::move(rows)}, {"set", den.set}};
    });

    // ---- spectral
    auto* sc_sp = app.add_subcommand(
        "spectral", "build the (lambda, G) pair of a finite system and verify it both ways");
    struct {
        std::string system;
        std::string functions;
        std::int64_t pairs = 0;
    } sp;
    sc_sp->add_option("--system", sp.system,
                      "JSON file {weights,T,S} or random:SIZE:SEED for seeded permutations")
        ->required();
    sc_sp->add_option("--functions", sp.functions,
                      "JSON file {f,g,h} of [re,im] arrays (default: seeded random values)");
    sc_sp->add_option("--pairs", sp.pairs, "also check the bilinear bound on this many coefficient pairs");
    sc_sp->callback([&] {
        set_thread_count(g.threads);
        auto sys = system_from_spec(sp.system, g.seed);
        std::size_t s = sys.size();
        std::vector<cplx> f, gg, h;
        if (!sp.functions.empty()) {
            json j = read_json_file(sp.functions);
            f = cplx_array(j.at("f"));
            gg = cplx_array(j.at("g"));
            h = cplx_array(j.at("h"));
        } else {
            f = random_cplx(s, split_seed(g.seed, 1));
            gg = random_cplx(s, split_seed(g.seed, 2));
            h = random_cplx(s, split_seed(g.seed, 3));
        }
        auto pair = spectral_pair(sys, f, gg, h);
        doc = json{{"M", pair.order},
                   {"lambda", "uniform"},
                   {"max_identity_error", max_identity_error(pair, sys, f, gg, h)},
                   {"opnorm_G", opnorm_G(pair)}};
        if (sp.pairs > 0) {
            auto corr = correlation_table(sys, f, gg, h);
            double on = doc["opnorm_G"].get<double>();
            bool all = true;
            for (std::int64_t i = 0; i < sp.pairs; ++i) {
                auto a = random_cplx(pair.order, split_seed(g.seed, 100 + 2 * i));
                auto b = random_cplx(pair.order, split_seed(g.seed, 101 + 2 * i));
                all = all && verify_bilinear_bound(pair, a, b, corr, on).holds;
            }
            doc["bound_holds"] = all;
            doc["bound_pairs"] = sp.pairs;
        }
    });

    // ---- gauge
    auto* sc_ga = app.add_subcommand(
        "gauge", "sign value vs Hilbert-space value of a real bilinear matrix");
    struct {
        std::string matrix;
        std::int64_t dim = 0;
        std::int64_t restarts = 64;
        std::int64_t iters = 200;
    } ga;
    sc_ga->add_option("--matrix", ga.matrix, "JSON file holding a nested array of rows")->required();
    sc_ga->add_option("--dim", ga.dim, "embedding dimension (0 = rows + cols)");
    sc_ga->add_option("--restarts", ga.restarts, "alternating-ascent restarts (>= 32)");
    sc_ga->add_option("--iters", ga.iters, "alternating-ascent sweeps per restart");
    sc_ga->callback([&] {
        set_thread_count(g.threads);
        json j = read_json_file(ga.matrix);
        const json& grid = j.is_object() ? j.at("entries") : j;
        if (!grid.is_array() || grid.empty() || !grid[0].is_array())
            throw std::invalid_argument("gauge: matrix file must hold a nested array of rows");
        std::size_t m = grid.size(), k = grid[0].size();
        std::vector<double> entries;
        for (const auto& row : grid) {
            if (row.size() != k) throw std::invalid_argument("gauge: ragged matrix");
            for (const auto& v : row) entries.push_back(v.get<double>());
        }
        BilinearMatrix M(m, k, std::move(entries));
        GaugeOptions opt;
        opt.dim = static_cast<std::size_t>(ga.dim);
        opt.restarts = static_cast<std::size_t>(ga.restarts);
        opt.iters = static_cast<std::size_t>(ga.iters);
        opt.seed = g.seed;
        auto rep = grothendieck_ratio(M, opt);
        doc = json{{"hilbert_value", rep.hilbert},
                   {"infinite", rep.infinite},
                   {"ratio", rep.ratio},
                   {"sign_value", rep.sign}};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }

    try {
        emit(g, doc);
    } catch (const std::exception& e) {
        json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return code;
}

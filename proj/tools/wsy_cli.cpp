// Batch front-end: ingest pyramid specs, run computations and verification
// suites, emit JSON/text reports.
//
// Exit codes: 0 = all pass/skip, 1 = any fail, 2 = input error.

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "wsy/verify.hpp"

using namespace wsy;

namespace {

Pyramid load_pyramid(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pyramid file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return pyramid_from_json(j);
}

CompositionShape resolve_shape(const std::string& spec, const ShiftMatrix& sigma)
{
    if (spec == "min") return minimal_admissible_shape(sigma);
    std::vector<int> parts;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) parts.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    CompositionShape mu(parts);
    if (!mu.admissible_to(sigma))
        throw std::invalid_argument("shape (" + mu.str() + ") is not admissible to the shift matrix");
    return mu;
}

void emit(const json& j, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

std::string status_str(Check::St s)
{
    return s == Check::St::Pass ? "pass" : s == Check::St::Fail ? "FAIL" : "skip";
}

void emit_report(const VerificationReport& rep, const std::string& format, const std::string& out)
{
    if (format == "text") {
        std::ostringstream os;
        for (const auto& c : rep.checks) {
            os << status_str(c.status) << "  " << c.id;
            for (const auto& [k, v] : c.params) os << " " << k << "=" << v;
            if (!c.residual.empty()) os << "  [" << c.residual << "]";
            os << "\n";
        }
        os << "pass " << rep.count(Check::St::Pass) << ", fail " << rep.count(Check::St::Fail)
           << ", skip " << rep.count(Check::St::Skip) << "\n";
        if (out.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream f(out);
            f << os.str();
        }
    } else {
        emit(rep.to_json(), out);
    }
}

// Seeded spot checks on the engine itself: super Jacobi identity and
// straightening confluence on random words.
VerificationReport engine_preflight(std::shared_ptr<const Algebra> A, unsigned seed)
{
    VerificationReport rep;
    rep.pyramid = pyramid_to_json(A->pyramid());
    std::mt19937 rng(seed);
    int G = A->boxes() * A->boxes();
    auto rand_gen = [&] { return (int)(rng() % G); };
    for (int t = 0; t < 5; ++t) {
        Elem x = A->e(A->gen_i(rand_gen()), A->gen_j(rand_gen()));
        Elem y = A->e(A->gen_i(rand_gen()), A->gen_j(rand_gen()));
        Elem z = A->e(A->gen_i(rand_gen()), A->gen_j(rand_gen()));
        int px = 0, py = 0;
        A->parity_homogeneous(x, &px);
        A->parity_homogeneous(y, &py);
        Elem resid = A->bracket(x, A->bracket(y, z));
        resid -= A->bracket(A->bracket(x, y), z);
        Elem t2 = A->bracket(y, A->bracket(x, z));
        resid -= t2 * Rat((px & py) ? -1 : 1);
        Check c;
        c.id = "engine-jacobi";
        c.params = {{"trial", t}};
        if (!resid.is_zero_elem()) c.status = Check::St::Fail, c.residual = A->str(resid);
        rep.checks.push_back(std::move(c));
    }
    for (int t = 0; t < 5; ++t) {
        std::vector<int> word;
        int len = 2 + (int)(rng() % 4);
        for (int w = 0; w < len; ++w) word.push_back(rand_gen());
        size_t cut = 1 + rng() % (word.size() - 1);
        std::vector<int> w1(word.begin(), word.begin() + cut), w2(word.begin() + cut, word.end());
        Elem whole = A->normal_form(word, Rat(1));
        Elem split = A->mul(A->normal_form(w1, Rat(1)), A->normal_form(w2, Rat(1)));
        Check c;
        c.id = "engine-confluence";
        c.params = {{"trial", t}};
        Elem resid = whole - split;
        if (!resid.is_zero_elem()) c.status = Check::St::Fail, c.residual = A->str(resid);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finite W-superalgebra generators and shifted super Yangian verification"};
    app.require_subcommand(1);

    std::string pyramid_path, out_path, format = "json", shape_spec = "min";
    std::string shifted_path, suite = "all";
    int rmax = 4, dmax = 5, bound = 6, jobs = 1, split_block = 0, split_x = 1;
    unsigned seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--pyramid", pyramid_path, "pyramid JSON file")
            ->required()
            ->envname("WSY_PYRAMID");
        cmd->add_option("--out", out_path, "output file (default stdout)")->envname("WSY_OUT");
        cmd->add_option("--format", format, "json|text")->envname("WSY_FORMAT");
    };

    CLI::App* describe = app.add_subcommand("describe", "pyramid summary");
    add_common(describe);

    CLI::App* generators = app.add_subcommand("generators", "dump the W-superalgebra generators");
    add_common(generators);
    generators->add_option("--shape", shape_spec, "min or comma parts")->envname("WSY_SHAPE");
    generators->add_option("--rmax", rmax, "series truncation order")->envname("WSY_RMAX");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--shape", shape_spec, "min or comma parts")->envname("WSY_SHAPE");
    verify->add_option("--suite", suite, "relations|invariance|pbw|psi|baby|lemma92|refine|iota|eval|all")
        ->envname("WSY_SUITE");
    verify->add_option("--bound", bound, "relation degree bound")->envname("WSY_BOUND");
    verify->add_option("--rmax", rmax, "series order for psi/baby/lemma92/refine/eval")
        ->envname("WSY_RMAX");
    verify->add_option("--dmax", dmax, "degree cap for pbw/rank probes")->envname("WSY_DMAX");
    verify->add_option("--jobs", jobs, "worker threads")->envname("WSY_JOBS");
    verify->add_option("--seed", seed, "seed for the engine spot checks")->envname("WSY_SEED");
    verify->add_option("--shifted", shifted_path, "row-shifted pyramid (iota suite)")
        ->envname("WSY_SHIFTED");
    verify->add_option("--split-block", split_block, "block to split (refine suite; 0 = auto)")
        ->envname("WSY_SPLIT_BLOCK");
    verify->add_option("--split-x", split_x, "left part of the split (refine suite)")
        ->envname("WSY_SPLIT_X");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        Pyramid pi = load_pyramid(pyramid_path);
        auto A = std::make_shared<Algebra>(pi);
        Triple tr = triple_from_pyramid(pi);

        if (describe->parsed()) {
            json j = pyramid_to_json(pi);
            j["rows"] = json::array();
            for (const auto& w : pi.rows())
                j["rows"].push_back(json{{"length", w.length},
                                         {"label", w.minus ? "-" : "+"},
                                         {"offset", w.offset}});
            j["p"] = pi.p_tuple();
            j["rho"] = pi.rho();
            j["e_pi"] = A->str(A->e_pi());
            j["h_pi"] = A->h_pi_diag();
            auto cb = A->centralizer_basis();
            j["centralizer_dimension"] = cb.size();
            j["minimal_shape"] = minimal_admissible_shape(tr.sigma).parts;
            emit(j, out_path);
            return 0;
        }

        CompositionShape mu = resolve_shape(shape_spec, tr.sigma);

        if (generators->parsed()) {
            GaussGenerators G(A, mu, rmax);
            json out = json::array();
            auto push = [&](const std::string& fam, json idx, int r, const Elem& v) {
                json e;
                e["family"] = fam;
                e["block"] = std::move(idx);
                e["r"] = r;
                e["element"] = A->str(v);
                out.push_back(std::move(e));
            };
            for (int a = 1; a <= G.z(); ++a)
                for (int i = 1; i <= G.mu(a); ++i)
                    for (int j = 1; j <= G.mu(a); ++j)
                        for (int r = 0; r <= rmax; ++r) {
                            push("D", json{{"a", a}, {"i", i}, {"j", j}}, r, G.D(a, i, j, r));
                            push("D'", json{{"a", a}, {"i", i}, {"j", j}}, r, G.Dp(a, i, j, r));
                        }
            for (int b = 1; b + 1 <= G.z(); ++b)
                for (int h = 1; h <= G.mu(b); ++h)
                    for (int k = 1; k <= G.mu(b + 1); ++k) {
                        for (int r = G.smu(b, b + 1) + 1; r <= rmax; ++r)
                            push("E", json{{"b", b}, {"h", h}, {"k", k}}, r, G.E(b, h, k, r));
                        for (int r = G.smu(b + 1, b) + 1; r <= rmax; ++r)
                            push("F", json{{"b", b}, {"k", k}, {"h", h}}, r, G.F(b, k, h, r));
                    }
            emit(out, out_path);
            return 0;
        }

        // verify
        VerificationReport rep;
        rep.pyramid = pyramid_to_json(pi);
        rep.bound = bound;
        rep.append(engine_preflight(A, seed));
        auto want = [&](const std::string& s) { return suite == s || suite == "all"; };
        bool known = suite == "all";
        int maxshift = 0;
        for (int i = 1; i <= tr.sigma.size(); ++i)
            for (int j = 1; j <= tr.sigma.size(); ++j)
                maxshift = std::max(maxshift, tr.sigma.at(i, j));

        if (want("relations")) {
            known = true;
            rep.append(relations_suite(A, mu, bound, jobs));
        }
        if (want("invariance")) {
            known = true;
            GaussGenerators G(A, mu, std::max(rmax, bound));
            rep.append(verify_m_invariance(G, std::max(rmax, bound) - 1, jobs));
        }
        if (want("pbw")) {
            known = true;
            int need = 0;
            for (int a = 1; a <= mu.length(); ++a) need = std::max(need, p_block(pi, mu, a));
            GaussGenerators G(A, mu, need + maxshift + 1);
            rep.append(pbw_rank_check(G, dmax));
        }
        if (want("psi")) {
            known = true;
            rep.append(psi_suite(pi, rmax, std::min(dmax, 3)));
        }
        if (want("baby")) {
            known = true;
            rep.append(baby_comult_consistency(pi, rmax, std::min(dmax, 3)));
        }
        if (want("lemma92")) {
            known = true;
            rep.append(lemma92_suite(A, std::max(rmax, 4)));
        }
        if (want("refine")) {
            known = true;
            int p = split_block;
            if (p == 0)
                for (int a = 1; a <= mu.length(); ++a)
                    if (mu.part(a) >= 2) {
                        p = a;
                        break;
                    }
            if (p == 0) {
                rep.checks.push_back(Check::skip("refine", "no block of size >= 2 to split"));
            } else {
                rep.append(shape_refinement_check(A, mu, p, split_x, rmax));
            }
        }
        if (want("eval")) {
            known = true;
            bool zero = maxshift == 0;
            if (pi.ell() == 1 && zero) {
                rep.append(evaluation_consistency(A, std::max(rmax, 3)));
            } else if (suite == "eval") {
                throw std::invalid_argument("eval suite needs a one-column zero-shift rectangle");
            } else {
                rep.checks.push_back(Check::skip("eval", "pyramid is not a one-column rectangle"));
            }
        }
        if (suite == "iota") {
            known = true;
            if (shifted_path.empty()) throw std::invalid_argument("iota suite needs --shifted FILE");
            Pyramid shifted = load_pyramid(shifted_path);
            rep.append(iota_consistency(pi, shifted, mu, bound, jobs));
        }
        if (!known) throw std::invalid_argument("unknown suite: " + suite);

        emit_report(rep, format, out_path);
        return rep.all_ok() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "lkq/bounds.hpp"
#include "lkq/certificate.hpp"
#include "lkq/errors.hpp"
#include "lkq/field.hpp"
#include "lkq/girth.hpp"
#include "lkq/lift.hpp"
#include "lkq/rho.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>

using nlohmann::json;
using namespace lkq;

namespace {

// exit codes: 0 ok, 1 verification failure / bad input, 2 falsifying event,
// 3 budget exhausted
constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitFalsified = 2;
constexpr int kExitBudget = 3;

std::optional<std::vector<int>> parse_modulus(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<long long> parse_ll_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

// "3..15" (range) or "2,3,4" (list)
std::vector<int> parse_k_spec(const std::string& text, bool odd_only) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        for (int k = lo; k <= hi; ++k)
            if (!odd_only || k % 2 == 1) out.push_back(k);
    } else {
        for (long long v : parse_ll_list(text))
            if (!odd_only || v % 2 == 1) out.push_back(int(v));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

uint16_t rand_unit(std::mt19937_64& rng, int q) { return uint16_t(1 + rng() % uint64_t(q - 1)); }

json identities_lemma2(const Field& f, int nmax, int samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    json failures = json::array();
    long long cases = 0;
    for (int n = 1; n <= nmax; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int r = 0; r < samples; ++r) {
                std::vector<Elem> u, v;
                for (int i = 0; i < n; ++i) u.push_back(f.elem(rand_unit(rng, f.q())));
                for (int i = 0; i < n; ++i) v.push_back(f.elem(rand_unit(rng, f.q())));
                Elem s = lemma2_sum(n, j, u, v);
                ++cases;
                if (!s.is_zero() && failures.size() < 10) {
                    json fail;
                    fail["n"] = n;
                    fail["j"] = j;
                    std::vector<int> ui, vi;
                    for (auto e : u) ui.push_back(e.idx);
                    for (auto e : v) vi.push_back(e.idx);
                    fail["u"] = ui;
                    fail["v"] = vi;
                    fail["sum"] = s.idx;
                    failures.push_back(fail);
                }
            }
    return json{{"cases", cases}, {"failures", failures}};
}

json identities_lemma3(const Field& f, int nmax, int samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    json failures = json::array();
    long long cases = 0;
    for (int n = 1; n <= nmax; ++n)
        for (int t = -1; t <= n + 1; ++t)
            for (int r = 0; r < samples; ++r) {
                std::vector<Elem> u;
                for (int i = 0; i < 2 * n; ++i) u.push_back(f.elem(rand_unit(rng, f.q())));
                auto pairs = lemma3_check(n, t, u);
                ++cases;
                for (size_t e = 0; e < pairs.size(); ++e) {
                    if (pairs[e].first != pairs[e].second && failures.size() < 10) {
                        json fail;
                        fail["n"] = n;
                        fail["t"] = t;
                        fail["equality"] = e + 1;
                        std::vector<int> ui;
                        for (auto el : u) ui.push_back(el.idx);
                        fail["u"] = ui;
                        fail["lhs"] = pairs[e].first.idx;
                        fail["rhs"] = pairs[e].second.idx;
                        failures.push_back(fail);
                    }
                }
            }
    return json{{"cases", cases}, {"failures", failures}};
}

json identities_scaling(const Field& f, int nmax, int samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    json failures = json::array();
    long long cases = 0;
    for (int n = 1; n <= nmax; ++n)
        for (int parity = 0; parity <= 1; ++parity)
            for (int j = 0; j <= n; ++j)
                for (int r = 0; r < samples; ++r) {
                    int len = 2 * n + parity;
                    OmegaSeq w;
                    for (int i = 0; i < len; ++i) w.push_back(f.elem(rand_unit(rng, f.q())));
                    Elem a = f.elem(rand_unit(rng, f.q()));
                    Elem b = f.elem(rand_unit(rng, f.q()));
                    auto [lhs, rhs] = scaling_check(n, j, w, a, b);
                    ++cases;
                    if (lhs != rhs && failures.size() < 10) {
                        json fail;
                        fail["n"] = n;
                        fail["j"] = j;
                        fail["len"] = len;
                        fail["a"] = a.idx;
                        fail["b"] = b.idx;
                        std::vector<int> wi;
                        for (auto e : w) wi.push_back(e.idx);
                        fail["w"] = wi;
                        fail["lhs"] = lhs.idx;
                        fail["rhs"] = rhs.idx;
                        failures.push_back(fail);
                    }
                }
    return json{{"cases", cases}, {"failures", failures}};
}

json girth_result_json(const GirthResult& res) {
    json j;
    j["k"] = res.params.k;
    j["q"] = res.params.q();
    if (res.girth)
        j["girth"] = *res.girth;
    else
        j["girth"] = nullptr;
    j["lower_bound"] = res.lower_bound;
    j["method"] = res.method;
    j["nodes_visited"] = res.stats.nodes_visited;
    j["budget_exhausted"] = res.budget_exhausted;
    if (res.witness_cert) j["witness"] = json::parse(certificate_to_json(*res.witness_cert));
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"girth laboratory for the algebraic bipartite graphs Lambda(k,q)"};
    app.require_subcommand(1);

    // ---- field ----
    auto* cmd_field = app.add_subcommand("field", "describe GF(p^m)");
    std::string f_q, f_mod;
    bool f_json = false;
    cmd_field->add_option("--q", f_q, "field size as P^M or N")->required();
    cmd_field->add_option("--modulus", f_mod, "modulus coefficients c0,c1,...,1");
    cmd_field->add_flag("--json", f_json);

    // ---- girth ----
    auto* cmd_girth = app.add_subcommand("girth", "girth of Lambda(k,q)");
    std::string g_q;
    int g_k = 2, g_maxdepth = 64, g_threads = 1;
    uint64_t g_mem = uint64_t(8) << 30;
    std::string g_method = "bfs", g_cert_out;
    bool g_json = false;
    cmd_girth->add_option("--k", g_k)->required();
    cmd_girth->add_option("--q", g_q)->required();
    cmd_girth->add_option("--max-depth", g_maxdepth);
    cmd_girth->add_option("--mem", g_mem, "memory budget in bytes");
    cmd_girth->add_option("--method", g_method)->check(CLI::IsMember({"bfs", "full", "type"}));
    cmd_girth->add_option("--threads", g_threads);
    cmd_girth->add_option("--cert-out", g_cert_out, "write the witness certificate");
    cmd_girth->add_flag("--json", g_json);

    // ---- scan ----
    auto* cmd_scan = app.add_subcommand("scan", "empirical conjecture scan over (k, q)");
    std::string s_q, s_kodd, s_k, s_out;
    int s_maxdepth = 64;
    uint64_t s_mem = uint64_t(8) << 30;
    cmd_scan->add_option("--q", s_q, "comma list of prime powers")->required();
    cmd_scan->add_option("--k-odd", s_kodd, "odd k range lo..hi");
    cmd_scan->add_option("--k", s_k, "explicit k list or range");
    cmd_scan->add_option("--max-depth", s_maxdepth);
    cmd_scan->add_option("--mem", s_mem);
    cmd_scan->add_option("--out", s_out, "CSV path ('-' for stdout)");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "re-check a certificate file");
    std::string v_cert;
    bool v_quiet = false;
    cmd_verify->add_option("--cert", v_cert)->required();
    cmd_verify->add_flag("--quiet", v_quiet);

    // ---- lift ----
    auto* cmd_lift = app.add_subcommand("lift", "apply a circuit lifting rule");
    std::string l_rule, l_cert, l_out;
    long long l_q = 0;
    int l_s = 0, l_t = 0, l_tmax = 3;
    cmd_lift->add_option("--rule", l_rule)
        ->required()
        ->check(CLI::IsMember({"t2", "t2d", "l4", "l4d", "t3i3", "t3i4", "cor1", "t4"}));
    cmd_lift->add_option("--cert", l_cert, "input certificate (all rules except t4)");
    cmd_lift->add_option("--out", l_out, "output path (single) or prefix (chains)");
    cmd_lift->add_option("--tmax", l_tmax, "chain length for cor1");
    cmd_lift->add_option("--q", l_q, "t4: field size");
    cmd_lift->add_option("--s", l_s, "t4: exact power of 2 in q-1");
    cmd_lift->add_option("--t", l_t, "t4: odd part parameter");

    // ---- bounds ----
    auto* cmd_bounds = app.add_subcommand("bounds", "derive girth bracket from all rules");
    std::string b_q;
    int b_k = 2;
    bool b_seed_bfs = false, b_json = false;
    cmd_bounds->add_option("--k", b_k)->required();
    cmd_bounds->add_option("--q", b_q)->required();
    cmd_bounds->add_flag("--seed-bfs", b_seed_bfs, "seed exact small-k girths by BFS");
    cmd_bounds->add_flag("--json", b_json);

    // ---- table ----
    auto* cmd_table = app.add_subcommand("table", "known-girth table for q = 3");
    long long t_q_opt = 3;
    int t_kmax = 320;
    bool t_nobfs = false;
    std::string t_out;
    cmd_table->add_option("--q", t_q_opt)->check(CLI::IsMember({3}));
    cmd_table->add_option("--kmax", t_kmax);
    cmd_table->add_flag("--no-bfs", t_nobfs, "skip BFS seeding (brackets for small k)");
    cmd_table->add_option("--out", t_out, "CSV path ('-' for stdout)");

    // ---- identities ----
    auto* cmd_id = app.add_subcommand("identities", "randomized polynomial identity suites");
    std::string i_check, i_q, i_out;
    int i_n = 6, i_samples = 200;
    uint64_t i_seed = 1;
    cmd_id->add_option("--check", i_check)
        ->required()
        ->check(CLI::IsMember({"lemma2", "lemma3", "scaling"}));
    cmd_id->add_option("--q", i_q)->required();
    cmd_id->add_option("--n", i_n);
    cmd_id->add_option("--samples", i_samples);
    cmd_id->add_option("--seed", i_seed);
    cmd_id->add_option("--out", i_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_field) {
            auto field = Field::parse(f_q, parse_modulus(f_mod));
            if (f_json) {
                json j{{"p", field->p()}, {"m", field->m()}, {"q", field->q()},
                       {"units", field->q() - 1}};
                if (field->m() > 1) j["modulus"] = field->modulus();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "GF(" << field->q() << ") = GF(" << field->p() << "^" << field->m()
                          << ")";
                if (field->m() > 1) {
                    std::cout << ", modulus";
                    for (int c : field->modulus()) std::cout << " " << c;
                }
                std::cout << ", " << field->q() - 1 << " units\n";
            }
            return kExitOk;
        }

        if (*cmd_girth) {
            auto field = Field::parse(g_q);
            GraphParams g = GraphParams::make(g_k, field);
            GirthResult res;
            if (g_method == "full") {
                res = girth_full_bfs(g);
            } else if (g_method == "type") {
                res.params = g;
                res.method = "type-search";
                res.lower_bound = (g.k + 4) % 2 == 0 ? g.k + 4 : g.k + 5;
                for (int i = res.lower_bound / 2; 2 * i <= g_maxdepth + 1; ++i) {
                    auto ts = find_circuit_type(g, i, TypeSearchStrategy::Seeded);
                    if (ts.type) {
                        auto cert = is_circuit_type(g, *ts.type, true, "type-search");
                        res.girth = 2 * i;
                        res.lower_bound = 2 * i;
                        if (cert) res.witness_cert = cert;
                        break;
                    }
                    if (!ts.space_exhausted) break; // budget: bracket only
                    res.lower_bound = 2 * (i + 1);
                }
            } else {
                res = girth_bfs(g, g_maxdepth, g_mem, g_threads);
            }
            if (g_json) {
                std::cout << girth_result_json(res).dump(2) << "\n";
            } else if (res.girth) {
                std::cout << "g(Lambda(" << g.k << "," << g.q() << ")) = " << *res.girth << "\n";
            } else {
                std::cout << "g(Lambda(" << g.k << "," << g.q() << ")) >= " << res.lower_bound
                          << " (search cut off)\n";
            }
            if (!g_cert_out.empty() && res.witness_cert)
                save_certificate(*res.witness_cert, g_cert_out);
            return res.girth ? kExitOk : kExitBudget;
        }

        if (*cmd_scan) {
            std::vector<int> ks;
            if (!s_kodd.empty()) ks = parse_k_spec(s_kodd, true);
            if (!s_k.empty()) {
                auto more = parse_k_spec(s_k, false);
                ks.insert(ks.end(), more.begin(), more.end());
            }
            if (ks.empty())
                throw std::invalid_argument("scan needs --k or --k-odd");
            auto rows = scan_conjecture(parse_ll_list(s_q), ks, s_maxdepth, s_mem);
            write_text(s_out, scan_csv(rows));
            bool undecided = false, violated = false;
            for (const auto& r : rows) {
                undecided |= (r.status == "undecided");
                violated |= (r.status == "violated" && r.in_scope);
            }
            if (violated) return kExitFalsified;
            return undecided ? kExitBudget : kExitOk;
        }

        if (*cmd_verify) {
            CircuitCertificate cert = load_certificate(v_cert);
            VerifyResult res = verify_certificate(cert);
            if (!v_quiet) {
                std::cout << (res.ok ? "OK" : "FAIL") << " k=" << cert.k << " q=" << cert.field->q()
                          << " length=" << cert.length << ": " << res.message << "\n";
            }
            return res.ok ? kExitOk : kExitVerify;
        }

        if (*cmd_lift) {
            if (l_rule == "t4") {
                if (l_q == 0)
                    throw std::invalid_argument("t4 needs --q, --s, --t");
                Theorem4Result res = theorem4_instance(l_q, l_s, l_t);
                std::cout << "k=" << res.k << " girth claim " << res.girth_claim << " ("
                          << res.status << ")\n";
                if (!l_out.empty())
                    for (const auto& c : res.chain)
                        save_certificate(c, l_out + "_k" + std::to_string(c.k) + "_len" +
                                                std::to_string(c.length) + ".json");
                return kExitOk;
            }
            if (l_cert.empty())
                throw std::invalid_argument("lift needs --cert");
            CircuitCertificate in = load_certificate(l_cert);
            if (l_rule == "cor1") {
                auto chain = chain_cor1(in, l_tmax);
                for (const auto& c : chain) {
                    std::cout << "k=" << c.k << " length=" << c.length << " (" << c.provenance
                              << ")\n";
                    if (!l_out.empty())
                        save_certificate(c, l_out + "_k" + std::to_string(c.k) + "_len" +
                                                std::to_string(c.length) + ".json");
                }
                return kExitOk;
            }
            CircuitCertificate out;
            if (l_rule == "t2") out = lift_t2(in);
            else if (l_rule == "t2d") out = lift_t2_down(in);
            else if (l_rule == "l4") out = lift_l4(in);
            else if (l_rule == "l4d") out = lift_l4_down(in);
            else if (l_rule == "t3i3") out = lift_t3_item3(in);
            else out = lift_t3_item4(in);
            std::cout << "k=" << out.k << " length=" << out.length << " verified ("
                      << out.provenance << ")\n";
            if (!l_out.empty()) save_certificate(out, l_out);
            return kExitOk;
        }

        if (*cmd_bounds) {
            auto field_q = Field::parse(b_q); // validates prime power
            DeriveOptions opts;
            opts.seed_bfs = b_seed_bfs;
            BoundReport rep = derive_girth(b_k, field_q->q(), opts);
            if (b_json) {
                json j{{"k", rep.k}, {"q", rep.q}, {"lower", rep.lower}};
                if (rep.upper) j["upper"] = *rep.upper;
                if (rep.exact) j["exact"] = *rep.exact;
                j["rule_chain"] = rep.rule_chain;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "g(Lambda(" << rep.k << "," << rep.q << "))";
                if (rep.exact)
                    std::cout << " = " << *rep.exact << "\n";
                else if (rep.upper)
                    std::cout << " in [" << rep.lower << ", " << *rep.upper << "]\n";
                else
                    std::cout << " >= " << rep.lower << "\n";
                for (const auto& line : rep.rule_chain) std::cout << "  " << line << "\n";
            }
            return kExitOk;
        }

        if (*cmd_table) {
            auto rows = table_q3(t_kmax, !t_nobfs);
            write_text(t_out, table_csv(rows));
            return kExitOk;
        }

        if (*cmd_id) {
            auto field = Field::parse(i_q);
            json body;
            if (i_check == "lemma2") body = identities_lemma2(*field, i_n, i_samples, i_seed);
            else if (i_check == "lemma3") body = identities_lemma3(*field, i_n, i_samples, i_seed);
            else body = identities_scaling(*field, i_n, i_samples, i_seed);
            json rep{{"check", i_check}, {"q", field->q()}, {"n", i_n},
                     {"samples", i_samples}, {"seed", i_seed},
                     {"cases", body["cases"]}, {"failures", body["failures"]},
                     {"pass", body["failures"].empty()}};
            write_text(i_out, rep.dump(2) + "\n");
            return rep["pass"].get<bool>() ? kExitOk : kExitFalsified;
        }
    } catch (const falsification_error& e) {
        std::cerr << e.what() << "\n";
        return kExitFalsified;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitOk;
}

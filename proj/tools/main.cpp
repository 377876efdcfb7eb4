#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsbseq/autocorr.hpp"
#include "lsbseq/twoadic.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitResource = 2;

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << text;
    }
}

ordered_json field_json(const lsbseq::FieldContext& ctx) {
    return ordered_json::parse(ctx.to_json());
}

// Build the field, auto-targeting beta = 3 for p in {17, 31} unless the user
// asked for a specific beta.
lsbseq::FieldContext make_context(uint64_t p, unsigned n, std::optional<uint64_t> beta,
                                  bool* retargeted = nullptr) {
    lsbseq::FieldContext ctx = lsbseq::build_field(p, n);
    uint64_t want = beta.value_or((p == 17 || p == 31) ? 3 : ctx.beta);
    if (retargeted) *retargeted = want != ctx.beta;
    if (want != ctx.beta) ctx = lsbseq::retarget_beta(ctx, want);
    return ctx;
}

std::string join_i64(const std::vector<int64_t>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string join_u64(const std::vector<uint64_t>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string short_mpz(const mpz_class& v) {
    std::string hex = v.get_str(16);
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (hex.size() <= 20) return hex + " (" + std::to_string(bits) + " bits)";
    return hex.substr(0, 8) + "..." + hex.substr(hex.size() - 8) + " (" + std::to_string(bits) +
           " bits)";
}

int cmd_table1(uint64_t p_max, const std::string& format, const std::string& out) {
    if (p_max < 7) {
        std::cerr << "table1: no prime >= 7 in range (need --p-max >= 7)\n";
        return kExitResource;
    }
    auto rows = lsbseq::acb_table(p_max);
    auto diffs = lsbseq::acb_table_diff(p_max);

    ordered_json doc;
    doc["command"] = "table1";
    doc["config"] = {{"p_max", p_max}};
    doc["timestamp"] = utc_timestamp();
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        lsbseq::AcbVector v{r.p, r.betas.front(), r.acb};
        doc["rows"].push_back({{"p", r.p},
                               {"betas", r.betas},
                               {"acb_I", r.acb},
                               {"within_observed_range", lsbseq::acb_within_observed_range(v)}});
    }
    doc["diffs"] = ordered_json::array();
    for (const auto& d : diffs)
        doc["diffs"].push_back({{"p", d.p},
                                {"beta", d.beta},
                                {"index", d.index},
                                {"computed", d.computed},
                                {"reference", d.reference}});
    doc["match"] = diffs.empty();

    if (format == "json") {
        emit(doc.dump(2), out);
    } else if (format == "csv") {
        std::ostringstream os;
        os << "p,betas,acb_I\n";
        for (const auto& r : rows)
            os << r.p << ",\"" << join_u64(r.betas) << "\",\"" << join_i64(r.acb) << "\"\n";
        emit(os.str(), out);
    } else {
        std::ostringstream os;
        for (const auto& r : rows)
            os << r.p << "\t[" << join_u64(r.betas) << "]\t(" << join_i64(r.acb) << ")\n";
        os << (diffs.empty() ? "reference table: all rows match\n" : "reference table DIFFS:\n");
        for (const auto& d : diffs)
            os << "  p=" << d.p << " beta=" << d.beta << " index=" << d.index
               << " computed=" << d.computed << " reference=" << d.reference << "\n";
        emit(os.str(), out);
    }
    for (const auto& d : diffs)
        std::cerr << "table1 mismatch: p=" << d.p << " beta=" << d.beta << " index=" << d.index
                  << " computed=" << d.computed << " reference=" << d.reference << "\n";
    return diffs.empty() ? kExitOk : kExitMismatch;
}

int cmd_ac(uint64_t p, unsigned n, std::optional<uint64_t> beta, std::optional<uint64_t> tau,
           uint64_t brute_cap, bool sampled_ok, uint64_t seed, const std::string& format,
           const std::string& out) {
    bool retargeted = false;
    auto ctx = make_context(p, n, beta, &retargeted);
    auto lsb = lsbseq::lsb_sequence(lsbseq::m_sequence(ctx));
    auto acb = lsbseq::acb_vector(ctx.p, ctx.beta);

    ordered_json doc;
    doc["command"] = "ac";
    doc["config"] = {{"p", p}, {"n", n}, {"beta", ctx.beta}, {"auto_retargeted", retargeted},
                     {"tau", tau ? ordered_json(*tau) : ordered_json(nullptr)},
                     {"brute_cap", brute_cap}, {"seed", seed}};
    doc["field"] = field_json(ctx);
    doc["timestamp"] = utc_timestamp();

    if (tau) {
        int64_t brute = lsbseq::ac_at(lsb, *tau);
        int64_t pred = lsbseq::predicted_ac(ctx, acb, *tau);
        doc["results"] = {{"tau", *tau}, {"brute", brute}, {"predicted", pred}, {"match", brute == pred}};
        if (format == "json")
            emit(doc.dump(2), out);
        else
            emit("tau=" + std::to_string(*tau) + " brute=" + std::to_string(brute) +
                     " predicted=" + std::to_string(pred) + (brute == pred ? " match" : " MISMATCH"),
                 out);
        return brute == pred ? kExitOk : kExitMismatch;
    }

    if (ctx.order > brute_cap && !sampled_ok) {
        std::cerr << "ac: N=" << ctx.order << " exceeds --brute-cap " << brute_cap
                  << "; pass --sampled for hybrid verification\n";
        return kExitResource;
    }
    auto rep = lsbseq::verify_closed_form(ctx, lsb, brute_cap, lsbseq::kDefaultSampleSize, seed);
    doc["results"] = {{"N", rep.N},
                      {"sampled", rep.sampled},
                      {"checked", rep.checked},
                      {"mismatches", rep.mismatches}};
    if (!rep.sampled) doc["results"]["profile"] = lsbseq::ac_profile(lsb, brute_cap).values;
    if (format == "json") {
        emit(doc.dump(2), out);
    } else if (format == "csv") {
        std::ostringstream os;
        if (ctx.order <= brute_cap) {
            auto prof = lsbseq::ac_profile(lsb, brute_cap);
            os << lsbseq::to_csv(prof);
        } else {
            os << "tau,ac\n";
        }
        emit(os.str(), out);
    } else {
        std::ostringstream os;
        os << "p=" << p << " n=" << n << " N=" << rep.N << " beta=" << ctx.beta
           << (retargeted ? " (retargeted)" : "") << "\n"
           << (rep.sampled ? "sampled" : "exhaustive") << " check: " << rep.checked
           << " shifts, " << rep.mismatches.size() << " mismatches\n";
        for (uint64_t t : rep.mismatches) os << "  mismatch at tau=" << t << "\n";
        emit(os.str(), out);
    }
    return rep.mismatches.empty() ? kExitOk : kExitMismatch;
}

ordered_json twoadic_json(const lsbseq::TwoAdicReport& rep) {
    return ordered_json::parse(rep.to_json());
}

std::string twoadic_text(const lsbseq::TwoAdicReport& rep) {
    std::ostringstream os;
    os << "p=" << rep.p << " n=" << rep.n << " N=" << rep.N << " M=" << rep.M
       << " beta=" << rep.beta << "\n";
    os << "  S(2)            = " << short_mpz(rep.s2) << "\n";
    os << "  gcd with 2^N-1  = " << short_mpz(rep.g_full) << "\n";
    os << "  gcd with 2^h+1  = " << short_mpz(rep.g_plus) << "\n";
    os << "  gcd with 2^h-1  = " << short_mpz(rep.g_minus) << "\n";
    if (rep.gcd_predicted)
        os << "  case-table gcd  : " << (rep.gcd_matches ? "matches" : "MISMATCH") << "\n";
    os << "  phi2 exact      = " << rep.phi2_exact << "\n";
    os << "  lower bound     = " << rep.bound_value
       << (rep.bound_is_proven ? " (proven)" : " (heuristic)") << "\n";
    os << "  conjectured main= " << rep.conjecture.main_part << " slack=" << rep.conjecture.slack
       << " cap=" << rep.conjecture.c_cap << (rep.conjecture.cap_is_heuristic ? " (heuristic)" : "")
       << "\n";
    os << "  verdict         : " << (rep.pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

int cmd_twoadic(uint64_t p, unsigned n, std::optional<uint64_t> beta, uint64_t max_bits,
                const std::string& format, const std::string& out) {
    bool retargeted = false;
    auto ctx = make_context(p, n, beta, &retargeted);
    auto lsb = lsbseq::lsb_sequence(lsbseq::m_sequence(ctx));
    auto rep = lsbseq::two_adic_report(ctx, lsb, max_bits);

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "twoadic";
        doc["config"] = {{"p", p}, {"n", n}, {"beta", ctx.beta}, {"auto_retargeted", retargeted},
                         {"max_bits", max_bits}};
        doc["field"] = field_json(ctx);
        doc["timestamp"] = utc_timestamp();
        doc["results"] = twoadic_json(rep);
        emit(doc.dump(2), out);
    } else {
        emit(twoadic_text(rep), out);
    }
    return rep.pass ? kExitOk : kExitMismatch;
}

struct GridCell {
    uint64_t p;
    unsigned n;
    std::string status;  // pass | fail | exploratory | skipped
    std::string detail;
    std::string field;  // context json, for reproducibility
    std::optional<lsbseq::TwoAdicReport> report;
};

int cmd_verify(uint64_t p_max, unsigned n_max, uint64_t max_bits, const std::string& format,
               const std::string& out) {
    std::vector<std::pair<uint64_t, unsigned>> cells;
    for (uint64_t p = 3; p <= p_max; p += 2) {
        if (!lsbseq::nt::is_prime(p)) continue;
        for (unsigned n = 2; n <= n_max; ++n) cells.emplace_back(p, n);
    }
    std::vector<GridCell> results(cells.size());
    std::atomic<size_t> next{0};
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                auto [p, n] = cells[i];
                GridCell cell{p, n, "", "", "", std::nullopt};
                try {
                    auto ctx = make_context(p, n, std::nullopt);
                    cell.field = ctx.to_json();
                    if (ctx.order > max_bits || ctx.order > lsbseq::kDefaultMaxPeriod) {
                        cell.status = "skipped";
                        cell.detail = "period exceeds bit budget";
                    } else {
                        auto lsb = lsbseq::lsb_sequence(lsbseq::m_sequence(ctx));
                        auto rep = lsbseq::two_adic_report(ctx, lsb, max_bits);
                        cell.report = rep;
                        if (!lsbseq::bound_supported(p))
                            cell.status = rep.conjecture.pass ? "exploratory" : "exploratory-flagged";
                        else
                            cell.status = rep.pass ? "pass" : "fail";
                    }
                } catch (const lsbseq::resource_limit_error& e) {
                    cell.status = "skipped";
                    cell.detail = e.what();
                }
                results[i] = std::move(cell);
            }
        });
    }
    for (auto& t : pool) t.join();

    std::ostringstream jsonl, csv, text;
    csv << "p,n,N,phi2_exact,bound,slack,verdict\n";
    bool any_fail = false;
    for (const auto& cell : results) {
        ordered_json line;
        line["p"] = cell.p;
        line["n"] = cell.n;
        line["status"] = cell.status;
        if (!cell.detail.empty()) line["detail"] = cell.detail;
        if (!cell.field.empty()) line["field"] = ordered_json::parse(cell.field);
        if (cell.report) {
            line["report"] = twoadic_json(*cell.report);
            csv << cell.p << ',' << cell.n << ',' << cell.report->N << ','
                << cell.report->phi2_exact << ',' << cell.report->bound_value << ','
                << (cell.report->phi2_exact - cell.report->bound_value) << ',' << cell.status
                << '\n';
        } else {
            csv << cell.p << ',' << cell.n << ",,,,," << cell.status << '\n';
        }
        jsonl << line.dump() << '\n';
        text << "p=" << cell.p << " n=" << cell.n << ": " << cell.status;
        if (cell.report)
            text << " (phi2=" << cell.report->phi2_exact << ", bound=" << cell.report->bound_value
                 << ")";
        text << '\n';
        if (cell.status == "fail") any_fail = true;
    }
    if (format == "json")
        emit(jsonl.str(), out);
    else if (format == "csv")
        emit(csv.str(), out);
    else
        emit(text.str(), out);
    if (!out.empty() && format == "json") {
        // grid runs also drop a CSV summary next to the JSON-lines file
        std::ofstream f(out + ".csv");
        f << csv.str();
    }
    return any_fail ? kExitMismatch : kExitOk;
}

int cmd_conjecture(uint64_t p, unsigned n, std::optional<uint64_t> beta,
                   std::optional<int64_t> c_cap, bool sweep_beta, uint64_t max_bits,
                   const std::string& format, const std::string& out) {
    std::vector<uint64_t> betas;
    if (sweep_beta)
        betas = lsbseq::nt::primitive_roots(p);
    else if (beta)
        betas = {*beta};
    else
        betas = {make_context(p, n, std::nullopt).beta};

    ordered_json doc;
    doc["command"] = "conjecture";
    doc["config"] = {{"p", p}, {"n", n}, {"sweep_beta", sweep_beta},
                     {"c_cap", c_cap ? ordered_json(*c_cap) : ordered_json(nullptr)},
                     {"max_bits", max_bits}};
    doc["timestamp"] = utc_timestamp();
    doc["results"] = ordered_json::array();
    std::ostringstream text;
    bool hard_fail = false;
    for (uint64_t b : betas) {
        auto ctx = make_context(p, n, b);
        auto lsb = lsbseq::lsb_sequence(lsbseq::m_sequence(ctx));
        auto rep = lsbseq::conjecture_check(lsb, p, n, c_cap, max_bits);
        doc["results"].push_back({{"beta", b},
                                  {"N", rep.N},
                                  {"phi2", rep.phi2},
                                  {"main_part", rep.main_part},
                                  {"c_cap", rep.c_cap},
                                  {"cap_is_heuristic", rep.cap_is_heuristic},
                                  {"slack", rep.slack},
                                  {"pass", rep.pass}});
        text << "p=" << p << " n=" << n << " beta=" << b << ": phi2=" << rep.phi2
             << " main=" << rep.main_part << " slack=" << rep.slack << " cap=" << rep.c_cap
             << (rep.cap_is_heuristic ? " (heuristic)" : "") << " -> "
             << (rep.pass ? "pass" : "FAIL") << "\n";
        if (!rep.pass && !rep.cap_is_heuristic) hard_fail = true;
    }
    if (format == "json")
        emit(doc.dump(2), out);
    else
        emit(text.str(), out);
    return hard_fail ? kExitMismatch : kExitOk;
}

int cmd_export_seq(uint64_t p, unsigned n, std::optional<uint64_t> beta, const std::string& kind,
                   unsigned component, const std::string& out) {
    lsbseq::BinarySequence seq;
    if (kind == "bseq") {
        uint64_t b = beta.value_or(lsbseq::nt::least_primitive_root(p));
        seq = lsbseq::b_sequence(p, b);
    } else {
        auto ctx = make_context(p, n, beta);
        auto mseq = lsbseq::m_sequence(ctx);
        if (kind == "lsb")
            seq = lsbseq::lsb_sequence(mseq);
        else if (kind == "bit")
            seq = lsbseq::bit_component(mseq, component);
        else
            throw CLI::ValidationError("--kind must be lsb, bit, or bseq");
        seq.n = n;
        seq.beta = ctx.beta;
    }
    if (out.empty()) {
        std::cout << lsbseq::to_json(seq) << "\n";
        return kExitOk;
    }
    std::ofstream jf(out + ".json");
    jf << lsbseq::to_json(seq);
    auto bytes = lsbseq::to_raw_bytes(seq);
    std::ofstream bf(out + ".bits", std::ios::binary);
    bf.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    std::cout << "wrote " << out << ".json and " << out << ".bits (" << seq.period() << " bits)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LSB/bit-component sequence analysis: autocorrelation distributions and 2-adic complexity"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", out_path;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", out_path, "output path (default stdout)");

    uint64_t p = 0, p_max = 100, beta_in = 0, tau_in = 0;
    unsigned n = 2, n_max = 3, component = 1;
    uint64_t max_bits = lsbseq::kDefaultMaxBits, brute_cap = lsbseq::kDefaultBruteCap;
    uint64_t seed = lsbseq::kDefaultSeed;
    int64_t c_cap_in = -1;
    bool sampled = false, sweep_beta = false;
    bool beta_set = false, tau_set = false, c_cap_set = false;

    auto* t1 = app.add_subcommand("table1", "reduced autocorrelation table for odd primes, diffed against the bundled reference");
    t1->add_option("--p-max", p_max, "largest prime to include")->capture_default_str();

    auto* ac = app.add_subcommand("ac", "brute-force vs closed-form autocorrelation");
    ac->add_option("--p", p, "prime")->required();
    ac->add_option("--n", n, "extension degree")->required();
    ac->add_option("--beta", beta_in, "primitive root target for alpha^M")->each([&](const std::string&) { beta_set = true; });
    ac->add_option("--tau", tau_in, "single shift to check")->each([&](const std::string&) { tau_set = true; });
    ac->add_option("--brute-cap", brute_cap, "largest N for exhaustive profiles")->capture_default_str();
    ac->add_flag("--sampled", sampled, "allow sampled verification above the brute cap");
    ac->add_option("--seed", seed, "sample seed")->capture_default_str();

    auto* ta = app.add_subcommand("twoadic", "2-adic complexity report for one (p, n)");
    ta->add_option("--p", p, "prime")->required();
    ta->add_option("--n", n, "extension degree")->required();
    ta->add_option("--beta", beta_in, "primitive root target")->each([&](const std::string&) { beta_set = true; });
    ta->add_option("--max-bits", max_bits, "bit budget for exact phi2")->capture_default_str();

    auto* ve = app.add_subcommand("verify", "grid of 2-adic reports over (p, n)");
    ve->add_option("--p-max", p_max, "largest prime")->capture_default_str();
    ve->add_option("--n-max", n_max, "largest extension degree")->capture_default_str();
    ve->add_option("--max-bits", max_bits, "bit budget for exact phi2")->capture_default_str();

    auto* cj = app.add_subcommand("conjecture", "conjectured-bound slack for one cell, optionally sweeping beta");
    cj->add_option("--p", p, "prime")->required();
    cj->add_option("--n", n, "extension degree")->required();
    cj->add_option("--beta", beta_in, "primitive root target")->each([&](const std::string&) { beta_set = true; });
    cj->add_option("--c-cap", c_cap_in, "override the allowed constant")->each([&](const std::string&) { c_cap_set = true; });
    cj->add_flag("--sweep-beta", sweep_beta, "run every primitive root");
    cj->add_option("--max-bits", max_bits, "bit budget")->capture_default_str();

    auto* ex = app.add_subcommand("export-seq", "write a sequence as raw bits + JSON");
    ex->add_option("--p", p, "prime")->required();
    ex->add_option("--n", n, "extension degree")->capture_default_str();
    ex->add_option("--beta", beta_in, "primitive root target")->each([&](const std::string&) { beta_set = true; });
    std::string kind = "lsb";
    ex->add_option("--kind", kind, "lsb | bit | bseq")->capture_default_str();
    ex->add_option("--component", component, "bit-component index for --kind bit")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    std::optional<uint64_t> beta_opt = beta_set ? std::optional<uint64_t>(beta_in) : std::nullopt;
    std::optional<uint64_t> tau_opt = tau_set ? std::optional<uint64_t>(tau_in) : std::nullopt;
    std::optional<int64_t> cap_opt = c_cap_set ? std::optional<int64_t>(c_cap_in) : std::nullopt;

    try {
        if (t1->parsed()) return cmd_table1(p_max, format, out_path);
        if (ac->parsed())
            return cmd_ac(p, n, beta_opt, tau_opt, brute_cap, sampled, seed, format, out_path);
        if (ta->parsed()) return cmd_twoadic(p, n, beta_opt, max_bits, format, out_path);
        if (ve->parsed()) return cmd_verify(p_max, n_max, max_bits, format, out_path);
        if (cj->parsed())
            return cmd_conjecture(p, n, beta_opt, cap_opt, sweep_beta, max_bits, format, out_path);
        if (ex->parsed()) return cmd_export_seq(p, n, beta_opt, kind, component, out_path);
    } catch (const lsbseq::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

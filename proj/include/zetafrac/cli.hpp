#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zetafrac/adversary.hpp"
#include "zetafrac/alpha.hpp"
#include "zetafrac/density.hpp"
#include "zetafrac/empirical.hpp"
#include "zetafrac/errors.hpp"
#include "zetafrac/format.hpp"
#include "zetafrac/report.hpp"
#include "zetafrac/riemann_siegel.hpp"
#include "zetafrac/version.hpp"
#include "zetafrac/zero_list.hpp"

namespace zetafrac {
namespace cli {

enum class ValKind { text, real, integer };

struct FlagSpec {
    const char* name;
    ValKind kind;
    const char* fallback;  // nullptr: value is absent unless provided
    bool required;
};

struct Resolved {
    std::string value;
    const char* origin;  // "flag", "file", or "default"
};

// Resolved configuration for one invocation.  Every value carries its
// origin so reports can state where each setting came from.
struct Config {
    std::string subcommand;
    std::map<std::string, Resolved> entries;

    bool has(const std::string& k) const { return entries.count(k) != 0; }

    const std::string& text(const std::string& k) const {
        auto it = entries.find(k);
        if (it == entries.end()) fail_usage("missing value for --" + k);
        return it->second.value;
    }

    double real(const std::string& k) const {
        auto v = parse_double(text(k));
        if (!v) fail_usage("--" + k + " expects a number, got '" + text(k) + "'");
        return *v;
    }

    long long integer(const std::string& k) const {
        auto v = parse_int(text(k));
        if (!v)
            fail_usage("--" + k + " expects an integer, got '" + text(k) + "'");
        return *v;
    }

    int int_arg(const std::string& k, long long lo, long long hi) const {
        long long v = integer(k);
        if (v < lo || v > hi)
            fail_usage("--" + k + " must be between " + std::to_string(lo) +
                       " and " + std::to_string(hi));
        return static_cast<int>(v);
    }
};

// Long flags only, always "--key value".
inline std::map<std::string, std::string> parse_flags(
    const std::vector<std::string>& args, std::size_t start) {
    std::map<std::string, std::string> out;
    for (std::size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.size() < 3 || a.compare(0, 2, "--") != 0)
            fail_usage("expected --flag, got '" + a + "'");
        std::string key = a.substr(2);
        if (i + 1 >= args.size()) fail_usage("flag --" + key + " needs a value");
        if (out.count(key)) fail_usage("duplicate flag --" + key);
        out[key] = args[++i];
    }
    return out;
}

// "key = value" lines; blank lines and '#' comments are skipped.  Keys use
// the flag names without the leading dashes.
inline std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_data("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos)
            fail_data("config parse error at line " + std::to_string(lineno) +
                      ": expected key = value, got '" + std::string(s) + "'");
        std::string key(trim(s.substr(0, eq)));
        std::string val(trim(s.substr(eq + 1)));
        if (key.empty() || val.empty())
            fail_data("config parse error at line " + std::to_string(lineno) +
                      ": empty key or value");
        if (out.count(key))
            fail_data("config parse error at line " + std::to_string(lineno) +
                      ": duplicate key '" + key + "'");
        out[key] = val;
    }
    return out;
}

inline void check_kind(const FlagSpec& spec, const std::string& value,
                       bool from_file) {
    bool ok = true;
    if (spec.kind == ValKind::real) ok = parse_double(value).has_value();
    if (spec.kind == ValKind::integer) ok = parse_int(value).has_value();
    if (ok) return;
    std::string what = spec.kind == ValKind::real ? "a number" : "an integer";
    if (from_file)
        fail_data("config file value for '" + std::string(spec.name) +
                  "' is not " + what + ": '" + value + "'");
    fail_usage("--" + std::string(spec.name) + " expects " + what + ", got '" +
               value + "'");
}

// Precedence: flag > file > built-in default.  Unknown names are rejected
// from both sources; the file may not name another config file.
inline Config resolve(const std::string& sub, const std::vector<FlagSpec>& schema,
                      std::map<std::string, std::string> flags) {
    Config cfg;
    cfg.subcommand = sub;

    std::map<std::string, std::string> file;
    if (auto it = flags.find("config"); it != flags.end()) {
        file = load_config(it->second);
        if (file.count("config"))
            fail_data("config file cannot set 'config'");
        cfg.entries["config"] = {it->second, "flag"};
        flags.erase(it);
    }

    auto find_spec = [&](const std::string& k) -> const FlagSpec* {
        for (const FlagSpec& s : schema)
            if (k == s.name) return &s;
        return nullptr;
    };
    for (const auto& [k, v] : flags)
        if (!find_spec(k))
            fail_usage("unknown flag --" + k + " for subcommand '" + sub + "'");
    for (const auto& [k, v] : file)
        if (!find_spec(k))
            fail_data("unknown key '" + k + "' in config file");

    for (const FlagSpec& s : schema) {
        if (auto it = flags.find(s.name); it != flags.end()) {
            check_kind(s, it->second, false);
            cfg.entries[s.name] = {it->second, "flag"};
        } else if (auto jt = file.find(s.name); jt != file.end()) {
            check_kind(s, jt->second, true);
            cfg.entries[s.name] = {jt->second, "file"};
        } else if (s.fallback) {
            cfg.entries[s.name] = {s.fallback, "default"};
        } else if (s.required) {
            fail_usage("subcommand '" + sub + "' requires --" +
                       std::string(s.name));
        }
    }
    return cfg;
}

// Every JSON report opens with the same header: tool identity, the fully
// resolved configuration with per-value origin, and (when zeros are in
// play) the provenance and accuracy of the table used.
inline void write_header(JsonWriter& w, const Config& cfg) {
    w.kv("tool", "zetafrac");
    w.kv("version", version_string);
    w.kv("subcommand", cfg.subcommand);
    w.key("config");
    w.begin_object();
    for (const auto& [k, r] : cfg.entries) {
        w.key(k);
        w.begin_object();
        w.kv("value", r.value);
        w.kv("from", r.origin);
        w.end_object();
    }
    w.end_object();
}

inline void write_zeros_info(JsonWriter& w, const ZeroList& zl) {
    w.key("zeros");
    w.begin_object();
    w.kv("source",
         zl.source.kind == ZeroSource::Kind::computed ? "computed" : "ingested");
    w.kv("detail", zl.source.detail);
    w.kv("accuracy", zl.accuracy);
    w.kv("count", static_cast<long long>(zl.count()));
    w.end_object();
}

inline void write_alpha_info(JsonWriter& w, const AlphaSpec& a,
                             const AlphaClass& cls) {
    w.key("alpha");
    w.begin_object();
    w.kv("expr", a.expr);
    w.kv("value", hp_to_double(a.value));
    w.kv("verdict",
         cls.verdict == AlphaVerdict::resonant ? "Resonant" : "Generic");
    if (cls.verdict == AlphaVerdict::resonant) {
        w.kv("p", cls.p);
        w.kv("a", cls.a);
        w.kv("q", cls.q);
    } else {
        w.kv_null("p");
        w.kv_null("a");
        w.kv_null("q");
    }
    w.end_object();
}

inline void emit_json(const Config& cfg, const char* flag, const JsonWriter& w,
                      std::ostream& out) {
    if (cfg.has(flag))
        write_file_atomic(cfg.text(flag), w.str() + "\n");
    else
        out << w.str() << "\n";
}

inline ZeroList load_zeros(const Config& cfg) {
    const std::string& path = cfg.text("zeros");
    std::ifstream in(path);
    if (!in) fail_data("cannot open zeros file: " + path);
    return ingest_zeros(in, ZeroFormat::plain, std::nullopt, path);
}

inline double pick_T(const Config& cfg, const ZeroList& zl) {
    return cfg.has("T") ? cfg.real("T") : zl.last();
}

inline int thread_arg(const Config& cfg) {
    return cfg.int_arg("threads", 0, 4096);
}

inline void write_store(const Config& cfg, const ZeroList& zl,
                        std::ostream& out) {
    std::ostringstream store;
    serialize_zeros(zl, store);
    write_file_atomic(cfg.text("out"), store.str());
    out << "count=" << zl.count()
        << " accuracy=" << format_double(zl.accuracy)
        << " last=" << format_double(zl.last()) << "\n";
}

inline const std::vector<FlagSpec>& schema_zeros_ingest() {
    static const std::vector<FlagSpec> s = {
        {"in", ValKind::text, nullptr, true},
        {"format", ValKind::text, "plain", false},
        {"accuracy", ValKind::real, nullptr, false},
        {"out", ValKind::text, nullptr, true},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_zeros_ingest(const Config& cfg, std::ostream& out) {
    const std::string& path = cfg.text("in");
    std::ifstream in(path);
    if (!in) fail_data("cannot open input file: " + path);
    ZeroFormat fmt;
    const std::string& f = cfg.text("format");
    if (f == "plain")
        fmt = ZeroFormat::plain;
    else if (f == "odlyzko")
        fmt = ZeroFormat::odlyzko;
    else
        fail_usage("--format must be plain or odlyzko, got '" + f + "'");
    std::optional<double> acc;
    if (cfg.has("accuracy")) acc = cfg.real("accuracy");
    write_store(cfg, ingest_zeros(in, fmt, acc, path), out);
}

inline const std::vector<FlagSpec>& schema_zeros_compute() {
    static const std::vector<FlagSpec> s = {
        {"count", ValKind::integer, nullptr, true},
        {"out", ValKind::text, nullptr, true},
        {"accuracy", ValKind::real, "1e-8", false},
        {"max-height", ValKind::real, "1e5", false},
        {"correction-order", ValKind::integer, "1", false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_zeros_compute(const Config& cfg, std::ostream& out) {
    EngineConfig ec;
    ec.target_accuracy = cfg.real("accuracy");
    ec.max_height = cfg.real("max-height");
    ec.correction_order = cfg.int_arg("correction-order", 0, 1);
    ec.threads = thread_arg(cfg);
    write_store(cfg, find_zeros(ec, cfg.integer("count")), out);
}

inline const std::vector<FlagSpec>& schema_classify() {
    static const std::vector<FlagSpec> s = {
        {"alpha", ValKind::text, nullptr, true},
        {"pmax", ValKind::integer, "1000", false},
        {"amax", ValKind::integer, "100", false},
        {"qmax", ValKind::integer, "100", false},
        {"alpha-tol", ValKind::real, "1e-20", false},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_classify(const Config& cfg, std::ostream& out) {
    AlphaSpec a = parse_alpha(cfg.text("alpha"));
    AlphaClass cls = classify_alpha(a, cfg.int_arg("pmax", 2, 100000000),
                                    cfg.int_arg("amax", 1, 100000000),
                                    cfg.int_arg("qmax", 1, 100000000),
                                    cfg.real("alpha-tol"));
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    w.kv("expr", a.expr);
    w.kv("value", hp_to_double(a.value));
    w.kv("verdict",
         cls.verdict == AlphaVerdict::resonant ? "Resonant" : "Generic");
    if (cls.verdict == AlphaVerdict::resonant) {
        w.kv("p", cls.p);
        w.kv("a", cls.a);
        w.kv("q", cls.q);
    } else {
        w.kv_null("p");
        w.kv_null("a");
        w.kv_null("q");
    }
    w.kv("residual", cls.residual);
    w.key("bounds");
    w.begin_object();
    w.kv("p_max", cls.bounds.p_max);
    w.kv("a_max", cls.bounds.a_max);
    w.kv("q_max", cls.bounds.q_max);
    w.kv("tol", cls.bounds.tol);
    w.end_object();
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline const std::vector<FlagSpec>& schema_density() {
    static const std::vector<FlagSpec> s = {
        {"alpha", ValKind::text, nullptr, true},
        {"samples", ValKind::integer, "1000", false},
        {"out", ValKind::text, nullptr, true},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_density(const Config& cfg, std::ostream& out) {
    AlphaSpec a = parse_alpha(cfg.text("alpha"));
    AlphaClass cls = classify_alpha(a);
    DensityModel m = density_from_class(cls);
    int samples = cfg.int_arg("samples", 2, 100000000);
    std::string csv = "t,g,G\n";
    for (int i = 0; i <= samples; ++i) {
        double t = static_cast<double>(i) / samples;
        double G = cumulative_G(m, t);
        if (G == 0.0) G = 0.0;  // scrub the sign off a negative zero
        csv += format_double(t);
        csv += ',';
        csv += format_double(g(m, t));
        csv += ',';
        csv += format_double(G);
        csv += '\n';
    }
    write_file_atomic(cfg.text("out"), csv);

    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    write_alpha_info(w, a, cls);
    if (m.kind == DensityKind::resonant) {
        BConstant b = b_constant(m);
        w.kv("g_min", g_min(m));
        w.kv("integral_g_sq", b.integral_g_sq);
        w.kv("max_abs_g_prime", b.max_abs_g_prime);
        w.kv("B", b.B);
    } else {
        w.kv("g_min", 0.0);
        w.kv("integral_g_sq", 0.0);
        w.kv("max_abs_g_prime", 0.0);
        w.kv("B", 0.0);
    }
    w.kv("discrepancy_constant", discrepancy_constant(m));
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline void write_weyl_array(JsonWriter& w, const ZeroList& zl,
                             const AlphaSpec& a, const DensityModel& m,
                             double T, int jmax, int threads) {
    w.key("weyl");
    w.begin_array();
    for (int j = 1; j <= jmax; ++j) {
        WeylSum ws = weyl_sum(zl, a, j, T, threads);
        w.begin_object();
        w.kv("j", j);
        w.kv("re", ws.normalized.real());
        w.kv("im", ws.normalized.imag());
        w.kv("predicted_re", fourier_coeff(m, j).real());
        w.end_object();
    }
    w.end_array();
}

inline void write_discrepancy_block(JsonWriter& w, const EmpiricalMeasure& em,
                                    const DensityModel& m) {
    double dstar = star_discrepancy(em);
    PredictedDiscrepancy pd = predicted_discrepancy(m, em.T);
    w.kv("D_star", dstar);
    w.kv("D_star_times_logT", dstar * std::log(em.T));
    w.key("predicted_discrepancy");
    w.begin_object();
    w.kv("value", pd.value);
    w.kv("constant", pd.constant);
    w.kv("vanishing", pd.vanishing);
    w.end_object();
    w.kv("integral_abs_M", integral_abs_M(em));
    w.kv("B_alpha", m.kind == DensityKind::resonant ? b_constant(m).B : 0.0);
}

inline const std::vector<FlagSpec>& schema_analyze() {
    static const std::vector<FlagSpec> s = {
        {"alpha", ValKind::text, nullptr, true},
        {"zeros", ValKind::text, nullptr, true},
        {"T", ValKind::real, nullptr, false},
        {"bins", ValKind::integer, "500", false},
        {"jmax", ValKind::integer, "8", false},
        {"out", ValKind::text, nullptr, true},
        {"m-out", ValKind::text, nullptr, false},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_analyze(const Config& cfg, std::ostream& out) {
    AlphaSpec a = parse_alpha(cfg.text("alpha"));
    ZeroList zl = load_zeros(cfg);
    double T = pick_T(cfg, zl);
    int threads = thread_arg(cfg);
    EmpiricalMeasure em = fractional_parts(zl, a, T, threads);
    if (em.n_of_T == 0)
        fail_data("no zeros at or below T = " + format_double(T));
    AlphaClass cls = classify_alpha(a);
    DensityModel m = density_from_class(cls);

    int bins = cfg.int_arg("bins", 2, 100000000);
    std::string csv = "bin_start,empirical,predicted\n";
    for (const HistogramRow& row : histogram(em, bins, m)) {
        csv += format_double(row.bin_start);
        csv += ',';
        csv += format_double(row.scaled_delta_m);
        csv += ',';
        csv += format_double(row.predicted_g);
        csv += '\n';
    }
    write_file_atomic(cfg.text("out"), csv);

    if (cfg.has("m-out")) {
        MFunctionReport mr = m_report(em);
        std::string mcsv = "y,M\n";
        for (std::size_t i = 0; i < mr.grid.size(); ++i) {
            mcsv += format_double(mr.grid[i]);
            mcsv += ',';
            mcsv += format_double(mr.m_values[i]);
            mcsv += '\n';
        }
        write_file_atomic(cfg.text("m-out"), mcsv);
    }

    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    write_zeros_info(w, zl);
    write_alpha_info(w, a, cls);
    w.kv("T", T);
    w.kv("N", em.n_of_T);
    w.kv("truncated", em.truncated);
    write_discrepancy_block(w, em, m);
    write_weyl_array(w, zl, a, m, T, cfg.int_arg("jmax", 1, 1024), threads);
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline const std::vector<FlagSpec>& schema_weyl() {
    static const std::vector<FlagSpec> s = {
        {"alpha", ValKind::text, nullptr, true},
        {"zeros", ValKind::text, nullptr, true},
        {"T", ValKind::real, nullptr, false},
        {"jmax", ValKind::integer, "8", false},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_weyl(const Config& cfg, std::ostream& out) {
    AlphaSpec a = parse_alpha(cfg.text("alpha"));
    ZeroList zl = load_zeros(cfg);
    double T = pick_T(cfg, zl);
    CountResult n = count_upto(zl, T);
    if (n.count == 0)
        fail_data("no zeros at or below T = " + format_double(T));
    AlphaClass cls = classify_alpha(a);
    DensityModel m = density_from_class(cls);
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    write_zeros_info(w, zl);
    write_alpha_info(w, a, cls);
    w.kv("T", T);
    w.kv("N", n.count);
    w.kv("truncated", n.truncated);
    write_weyl_array(w, zl, a, m, T, cfg.int_arg("jmax", 1, 1024),
                     thread_arg(cfg));
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline const std::vector<FlagSpec>& schema_discrepancy() {
    static const std::vector<FlagSpec> s = {
        {"alpha", ValKind::text, nullptr, true},
        {"zeros", ValKind::text, nullptr, true},
        {"T", ValKind::real, nullptr, false},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_discrepancy(const Config& cfg, std::ostream& out) {
    AlphaSpec a = parse_alpha(cfg.text("alpha"));
    ZeroList zl = load_zeros(cfg);
    double T = pick_T(cfg, zl);
    EmpiricalMeasure em = fractional_parts(zl, a, T, thread_arg(cfg));
    if (em.n_of_T == 0)
        fail_data("no zeros at or below T = " + format_double(T));
    AlphaClass cls = classify_alpha(a);
    DensityModel m = density_from_class(cls);
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    write_zeros_info(w, zl);
    write_alpha_info(w, a, cls);
    w.kv("T", T);
    w.kv("N", em.n_of_T);
    w.kv("truncated", em.truncated);
    write_discrepancy_block(w, em, m);
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline const std::vector<FlagSpec>& schema_landau() {
    static const std::vector<FlagSpec> s = {
        {"x", ValKind::real, nullptr, true},
        {"T", ValKind::real, nullptr, true},
        {"zeros", ValKind::text, nullptr, true},
        {"budget-constant", ValKind::real, "4", false},
        {"json", ValKind::text, nullptr, false},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_landau(const Config& cfg, std::ostream& out) {
    ZeroList zl = load_zeros(cfg);
    LandauReport rep =
        landau_compare(zl, cfg.real("x"), cfg.real("T"),
                       cfg.real("budget-constant"), thread_arg(cfg));
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    write_zeros_info(w, zl);
    w.kv("x", rep.x);
    w.kv("T", rep.T);
    w.key("lhs");
    w.begin_object();
    w.kv("re", rep.lhs.real());
    w.kv("im", rep.lhs.imag());
    w.end_object();
    w.key("main_term");
    w.begin_object();
    w.kv("re", rep.main_term.real());
    w.kv("im", rep.main_term.imag());
    w.end_object();
    w.kv("nearest_prime_power", rep.nearest);
    w.kv("error_budget", rep.error_budget);
    w.kv("ratio", rep.ratio);
    w.kv("within_budget", rep.within_budget);
    w.end_object();
    emit_json(cfg, "json", w, out);
}

inline const std::vector<FlagSpec>& schema_adversary() {
    static const std::vector<FlagSpec> s = {
        {"sequence", ValKind::text, nullptr, true},
        {"t", ValKind::real, nullptr, true},
        {"f", ValKind::text, nullptr, true},
        {"levels", ValKind::integer, nullptr, true},
        {"mode", ValKind::text, "tightened", false},
        {"n-max", ValKind::integer, nullptr, false},
        {"report", ValKind::text, nullptr, true},
        {"threads", ValKind::integer, "0", false},
    };
    return s;
}

inline void cmd_adversary(const Config& cfg, std::ostream& out) {
    const std::string& sname = cfg.text("sequence");
    Sequence seq;
    if (sname == "golden") {
        seq = golden_sequence();
    } else if (sname == "vandercorput") {
        seq = vandercorput_sequence();
    } else if (sname.rfind("file:", 0) == 0) {
        std::string path = sname.substr(5);
        std::ifstream in(path);
        if (!in) fail_data("cannot open sequence file: " + path);
        seq = ingest_sequence(in);
    } else {
        fail_usage("--sequence must be golden, vandercorput, or file:<path>");
    }
    const std::string& mname = cfg.text("mode");
    BudgetMode mode;
    if (mname == "paper")
        mode = BudgetMode::paper;
    else if (mname == "tightened")
        mode = BudgetMode::tightened;
    else
        fail_usage("--mode must be paper or tightened, got '" + mname + "'");
    long long n_max = cfg.has("n-max") ? cfg.integer("n-max") : 100000000LL;

    AdversarialConstruction c =
        make_construction(cfg.real("t"), std::move(seq),
                          decay_from_expr(cfg.text("f")), mode, n_max);
    int k_top = cfg.int_arg("levels", 1, 60);
    build_levels(c, k_top);

    JsonWriter w;
    w.begin_object();
    write_header(w, cfg);
    w.kv("t", c.t);
    w.kv("mode", mname);
    w.kv("sequence", sname);
    w.key("levels");
    w.begin_array();
    for (int k = 1; k <= k_top; ++k) {
        const LevelRecord& lv = c.levels[static_cast<std::size_t>(k - 1)];
        GapReport rep = verify_gap(c, k);
        w.begin_object();
        w.kv("k", k);
        w.kv("n_k", lv.n_k);
        w.kv("v_k", lv.v_k);
        w.kv("delta_k", lv.delta_k);
        w.kv("bump_count", static_cast<long long>(lv.bumps.size()));
        w.kv("integral_band", lv.integral_band);
        w.key("band");
        w.begin_object();
        w.kv("lo", lv.band.lo);
        w.kv("hi", lv.band.hi);
        w.end_object();
        w.key("window");
        w.begin_object();
        w.kv("lo", lv.window.lo);
        w.kv("hi", lv.window.hi);
        w.end_object();
        w.kv("gap_lhs", rep.lhs);
        w.kv("f_nk", rep.f_nk);
        w.kv("holds", rep.holds);
        w.kv("guaranteed", rep.guaranteed);
        w.kv("guarantee_threshold", rep.guarantee_threshold);
        w.kv("band_sum", rep.terms.sum_band);
        w.kv("tail_bound", rep.terms.tail_bound);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_file_atomic(cfg.text("report"), w.str() + "\n");
    out << "levels=" << k_top << " n_top=" << c.levels.back().n_k << "\n";
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    try {
        if (args.empty())
            fail_usage(
                "usage: zetafrac <subcommand> --flag value ...; subcommands: "
                "zeros-ingest, zeros-compute, classify, density, analyze, "
                "weyl, discrepancy, landau, adversary");
        const std::string& sub = args[0];
        auto flags = parse_flags(args, 1);
        if (sub == "zeros-ingest")
            cmd_zeros_ingest(resolve(sub, schema_zeros_ingest(), flags), out);
        else if (sub == "zeros-compute")
            cmd_zeros_compute(resolve(sub, schema_zeros_compute(), flags), out);
        else if (sub == "classify")
            cmd_classify(resolve(sub, schema_classify(), flags), out);
        else if (sub == "density")
            cmd_density(resolve(sub, schema_density(), flags), out);
        else if (sub == "analyze")
            cmd_analyze(resolve(sub, schema_analyze(), flags), out);
        else if (sub == "weyl")
            cmd_weyl(resolve(sub, schema_weyl(), flags), out);
        else if (sub == "discrepancy")
            cmd_discrepancy(resolve(sub, schema_discrepancy(), flags), out);
        else if (sub == "landau")
            cmd_landau(resolve(sub, schema_landau(), flags), out);
        else if (sub == "adversary")
            cmd_adversary(resolve(sub, schema_adversary(), flags), out);
        else
            fail_usage("unknown subcommand '" + sub +
                       "'; expected one of zeros-ingest, zeros-compute, "
                       "classify, density, analyze, weyl, discrepancy, "
                       "landau, adversary");
        return 0;
    } catch (const Error& e) {
        err << "zetafrac: error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        err << "zetafrac: internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace cli
}  // namespace zetafrac

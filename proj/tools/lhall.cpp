// lhall — exact computations on lecture hall polytopes: delta-vectors,
// Ehrhart values, parallelepiped enumeration, the remainder bijections, and
// batch verification of the identities connecting them.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lhall/lhall.hpp"

namespace {

using nlohmann::json;
using namespace lhall;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCapExceeded = 3;

json decimal_array(const std::vector<i64>& values) {
    json arr = json::array();
    for (i64 v : values)
        arr.push_back(std::to_string(v));
    return arr;
}

json decimal_array(const std::vector<bigint>& values) {
    json arr = json::array();
    for (const bigint& v : values)
        arr.push_back(v.str());
    return arr;
}

json points_array(const std::vector<lattice_point>& points) {
    json arr = json::array();
    for (const auto& p : points)
        arr.push_back(decimal_array(p));
    return arr;
}

std::vector<i64> parse_int_list(const std::string& text) {
    std::vector<i64> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma - start);
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size())
            throw std::invalid_argument("cannot parse integer '" + item + "'");
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

// The one mutable report object per run; field names are fixed so consumers
// can rely on the schema, and all numbers are decimal strings.
struct report {
    json body;
    bool failed = false;

    report(const std::string& command, const seq& s, const std::optional<std::string>& method) {
        body["command"] = command;
        body["s"] = decimal_array(s.entries());
        body["method"] = method ? json(*method) : json(nullptr);
        body["delta"] = nullptr;
        body["values"] = nullptr;
        body["counterexamples"] = json::array();
        body["elapsed_ms"] = "0";
    }

    void add_counterexample(const std::string& text) {
        body["counterexamples"].push_back(text);
        failed = true;
    }
};

std::string plain_json(const json& value) {
    if (value.is_string())
        return value.get<std::string>();
    return value.dump();
}

std::string csv_field(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void print_plain(const report& rep, std::ostream& os) {
    const json& b = rep.body;
    os << "command: " << b["command"].get<std::string>() << "\n";
    os << "s: ";
    for (std::size_t i = 0; i < b["s"].size(); ++i)
        os << (i ? "," : "") << b["s"][i].get<std::string>();
    os << "\n";
    if (!b["method"].is_null())
        os << "method: " << b["method"].get<std::string>() << "\n";
    if (!b["delta"].is_null()) {
        os << "delta: ";
        for (std::size_t i = 0; i < b["delta"].size(); ++i)
            os << (i ? "," : "") << b["delta"][i].get<std::string>();
        os << "\n";
    }
    if (!b["values"].is_null())
        for (const auto& [key, value] : b["values"].items())
            os << key << ": " << plain_json(value) << "\n";
    for (const auto& ce : b["counterexamples"])
        os << "counterexample: " << ce.get<std::string>() << "\n";
    os << "elapsed_ms: " << b["elapsed_ms"].get<std::string>() << "\n";
}

void print_csv(const report& rep, std::ostream& os) {
    const json& b = rep.body;
    // Point lists get the tabular layout; everything else is key,value rows.
    if (!b["values"].is_null() && b["values"].contains("points")) {
        const json& points = b["values"]["points"];
        const std::size_t dim = points.empty() ? 0 : points[0].size();
        for (std::size_t i = 1; i <= dim; ++i)
            os << "x" << i << ",";
        os << "level\n";
        for (const auto& p : points) {
            for (const auto& c : p)
                os << c.get<std::string>() << ",";
            os << p.back().get<std::string>() << "\n";
        }
        return;
    }
    auto join = [](const json& arr) {
        std::string out;
        for (std::size_t i = 0; i < arr.size(); ++i)
            out += (i ? "," : "") + arr[i].get<std::string>();
        return out;
    };
    os << "key,value\n";
    os << "command," << b["command"].get<std::string>() << "\n";
    os << "s," << csv_field(join(b["s"])) << "\n";
    if (!b["method"].is_null())
        os << "method," << b["method"].get<std::string>() << "\n";
    if (!b["delta"].is_null())
        os << "delta," << csv_field(join(b["delta"])) << "\n";
    if (!b["values"].is_null())
        for (const auto& [key, value] : b["values"].items())
            os << key << "," << csv_field(plain_json(value)) << "\n";
    for (const auto& ce : b["counterexamples"])
        os << "counterexample," << csv_field(ce.get<std::string>()) << "\n";
    os << "elapsed_ms," << b["elapsed_ms"].get<std::string>() << "\n";
}

struct cli_state {
    std::string seq_text;
    std::string format = "plain";
    std::string method;
    std::string op;
    std::string input_text;
    std::string q_text;
    i64 t = 1;
    i64 truncation = -1; // -1: default to n+4
    bool star = false;
    i64 max_points = 10'000'000;
    bool parallel = false;
    std::string property;
};

run_options options_of(const cli_state& st) {
    return run_options{st.max_points, st.parallel};
}

// ---------------------------------------------------------------- commands

void run_delta(const cli_state& st, report& rep) {
    const seq s = seq::parse(st.seq_text);
    const run_options opt = options_of(st);
    json methods = json::object();
    std::optional<delta_vector> reference;

    auto record = [&](const std::string& name, const delta_vector& d) {
        methods[name] = decimal_array(d.entries);
        if (!reference) {
            reference = d;
            rep.body["delta"] = decimal_array(d.entries);
        } else if (!(*reference == d)) {
            rep.add_counterexample("method " + name + " gives " + d.str() +
                                   ", expected " + reference->str());
        }
    };

    if (st.method == "par" || st.method == "all")
        record("par", delta_via_parallelepiped(s, opt));
    if (st.method == "des" || st.method == "all")
        record("des", delta_via_descents(s, opt));
    if (st.method == "asc" || (st.method == "all" && s[0] == 1))
        record("asc", delta_via_ascents(s, opt));
    rep.body["values"] = methods;
}

void run_ehrhart(const cli_state& st, report& rep) {
    const seq s = seq::parse(st.seq_text);
    const run_options opt = options_of(st);
    json values = json::object();
    values["t"] = std::to_string(st.t);

    std::optional<bigint> direct;
    std::optional<bigint> from_delta;
    if (st.method == "direct" || st.method == "both")
        direct = ehrhart_direct(s, st.t, opt).count;
    if (st.method == "delta" || st.method == "both") {
        const delta_vector d = delta_via_parallelepiped(s, opt);
        rep.body["delta"] = decimal_array(d.entries);
        from_delta = ehrhart_from_delta(d, st.t).count;
    }
    if (direct)
        values["direct"] = direct->str();
    if (from_delta)
        values["from_delta"] = from_delta->str();
    if (direct && from_delta && *direct != *from_delta)
        rep.add_counterexample("direct count " + direct->str() +
                               " != delta-derived count " + from_delta->str());
    rep.body["values"] = values;
}

void run_enumerate(const cli_state& st, report& rep) {
    const seq base = seq::parse(st.seq_text);
    const seq s = st.star ? base.starred() : base;
    const graded_points g = enumerate_par(s, options_of(st));
    json values = json::object();
    values["points"] = points_array(g.points);
    values["grading"] = decimal_array(g.level_counts);
    values["total"] = std::to_string(g.total());
    rep.body["values"] = values;
}

void run_map(const cli_state& st, report& rep) {
    const seq s = seq::parse(st.seq_text);
    const std::vector<i64> input = parse_int_list(st.input_text);
    const auto q_digits = [&]() -> std::optional<std::vector<i64>> {
        if (st.q_text.empty())
            return std::nullopt;
        return parse_int_list(st.q_text);
    }();
    auto q_word = [&](const seq& radices) {
        return q_digits ? word(radices, *q_digits) : word::zero(radices);
    };
    json values = json::object();

    if (st.op == "rem") {
        values["image"] = decimal_array(rem_q(s, q_word(s), input).digits());
    } else if (st.op == "rem-inv") {
        values["image"] = decimal_array(rem_q_inv(s, q_word(s), word(s, input)));
    } else if (st.op == "rem-bar") {
        values["image"] = decimal_array(rem_bar_q(s, q_word(s), input).digits());
    } else if (st.op == "phi") {
        values["image"] = decimal_array(phi_q(s, q_word(s), word(s, input)).digits());
    } else if (st.op == "gamma") {
        const bijection_trace trace = gamma(s, input);
        values["image"] = decimal_array(trace.target);
        values["trace"] = {{"rem", decimal_array(trace.after_rem.digits())},
                           {"drop", decimal_array(trace.after_drop.digits())},
                           {"phi", decimal_array(trace.after_phi.digits())},
                           {"reverse", decimal_array(trace.after_reverse.digits())},
                           {"source_level", std::to_string(trace.source_level)},
                           {"target_level", std::to_string(trace.target_level)}};
    } else if (st.op == "prop64") {
        const i64 n = s.size();
        for (i64 i = 0; i < n; ++i)
            if (s[static_cast<std::size_t>(i)] != i + 1)
                throw std::invalid_argument("prop64 requires the lecture sequence 1,2,...,n");
        const lecture_inversion_trace trace = lecture_inversion_map(n, input);
        values["image"] = decimal_array(trace.inversion_seq.digits());
        values["trace"] = {{"rem_bar", decimal_array(trace.after_rem_bar.digits())},
                           {"drop", decimal_array(trace.after_drop.digits())},
                           {"level", std::to_string(trace.level)},
                           {"asc", std::to_string(trace.asc_value)},
                           {"des", std::to_string(trace.des_value)}};
    } else if (st.op == "reversal-point") {
        values["image"] = decimal_array(reversal_point_map(s, st.t, input));
        values["t"] = std::to_string(st.t);
    } else {
        throw std::invalid_argument("unknown map operation '" + st.op + "'");
    }
    rep.body["values"] = values;
}

// ------------------------------------------------------------ verification

void verify_bijection(const seq& s, const run_options& opt, report& rep, json& values) {
    const graded_points g = enumerate_par(s, opt);
    i64 checked = 0;
    for (const auto& x : g.points) {
        const kr_pair pair = kr(s, x);
        if (rem_inv(s, pair.remainders) != x)
            rep.add_counterexample("rem_inv(rem(x)) != x at x=" + join_csv(x));
        const auto& digits = pair.remainders.digits();
        for (i64 i = 1; i <= s.size(); ++i)
            if (pair.quotients[static_cast<std::size_t>(i - 1)] != s_des_before(s, digits, i))
                rep.add_counterexample("quotient shape fails at x=" + join_csv(x) +
                                       ", i=" + std::to_string(i));
        ++checked;
    }
    for_each_word(
        s,
        [&](std::span<const i64> digits) {
            const word r(s, std::vector<i64>(digits.begin(), digits.end()));
            if (rem(s, rem_inv(s, r)) != r)
                rep.add_counterexample("rem(rem_inv(r)) != r at r=" + r.str());
        },
        opt);
    values["checked_points"] = std::to_string(checked);
}

void verify_grading(const seq& s, const run_options& opt, report& rep, json& values) {
    if (s[static_cast<std::size_t>(s.size() - 1)] != 1)
        throw std::invalid_argument("grading equality requires s_n = 1");
    std::vector<i64> plain = enumerate_par(s, opt).level_counts;
    std::vector<i64> starred = enumerate_par(s.starred(), opt).level_counts;
    const std::size_t len = std::max(plain.size(), starred.size());
    plain.resize(len, 0);
    starred.resize(len, 0);
    for (std::size_t i = 0; i < len; ++i)
        if (plain[i] != starred[i])
            rep.add_counterexample("level " + std::to_string(i) + ": " +
                                   std::to_string(plain[i]) + " vs " +
                                   std::to_string(starred[i]));
    values["grading"] = decimal_array(starred);
}

void verify_rev(const seq& s, const run_options& opt, report& rep, json& values) {
    for (const word& w : rev_identity_counterexamples(s, opt))
        rep.add_counterexample("descent transfer fails at r=" + w.str());

    // gamma must restrict to a bijection on every level
    const seq ustar = s.reversed().starred();
    const graded_points source = enumerate_par(s.starred(), opt);
    const graded_points target = enumerate_par(ustar, opt);
    std::vector<lattice_point> mapped;
    mapped.reserve(source.points.size());
    std::vector<i64> scratch(static_cast<std::size_t>(s.size()) + 1);
    for (const auto& x : source.points) {
        lattice_point y(x.size());
        lhall::detail::gamma_target_into(s, ustar, x, scratch, y);
        if (y.back() != x.back())
            rep.add_counterexample("gamma changes the level of x=" + join_csv(x));
        mapped.push_back(std::move(y));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != target.points)
        rep.add_counterexample("gamma image is not the parallelepiped of reverse(s)*");
    values["checked_words"] = s.product().str();
}

void verify_tilde(const seq& s, const run_options& opt, report& rep, json& values) {
    for (const word& w : tilde_identity_counterexamples(s, opt))
        rep.add_counterexample("tilde identity fails at r=" + w.str());
    values["checked_words"] = s.product().str();
}

void verify_s1(const seq& s, const run_options& opt, report& rep, json& values) {
    for (const word& w : s1_identity_counterexamples(s, opt))
        rep.add_counterexample("s1 identity fails at r=" + w.str());
    values["checked_words"] = s.product().str();
}

void verify_inversion_bijection(const seq& s, const run_options& opt, report& rep, json& values) {
    const i64 n = s.size();
    for (i64 i = 0; i < n; ++i)
        if (s[static_cast<std::size_t>(i)] != i + 1)
            throw std::invalid_argument("prop64 requires the lecture sequence 1,2,...,n");
    const graded_points g = enumerate_par(s.starred(), opt);
    std::vector<std::vector<i64>> images;
    for (const auto& x : g.points) {
        const lecture_inversion_trace trace = lecture_inversion_map(n, x);
        if (trace.level != trace.asc_value || trace.level != trace.des_value)
            rep.add_counterexample("level identity fails at x=" + join_csv(x));
        images.push_back(trace.inversion_seq.digits());
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
        rep.add_counterexample("map is not injective");
    bigint expected = 1;
    for (i64 i = 2; i <= n; ++i)
        expected *= i;
    if (bigint(static_cast<i64>(images.size())) != expected)
        rep.add_counterexample("image count " + std::to_string(images.size()) +
                               " != n! = " + expected.str());
    values["matched"] = std::to_string(images.size());
}

void verify_volume(const seq& s, const run_options& opt, report& rep, json& values) {
    const bigint volume = s.product();
    auto check = [&](const std::string& name, const delta_vector& d) {
        bigint sum = 0;
        for (const bigint& e : d.entries)
            sum += e;
        if (sum != volume)
            rep.add_counterexample(name + ": entries sum to " + sum.str() +
                                   ", normalized volume is " + volume.str());
        if (d.entries[0] != 1)
            rep.add_counterexample(name + ": delta_0 = " + d.entries[0].str() + " != 1");
    };
    const delta_vector par = delta_via_parallelepiped(s, opt);
    check("par", par);
    const delta_vector des = delta_via_descents(s, opt);
    check("des", des);
    if (!(par == des))
        rep.add_counterexample("par and des methods disagree");
    if (s[0] == 1) {
        const delta_vector asc = delta_via_ascents(s, opt);
        check("asc", asc);
        if (!(par == asc))
            rep.add_counterexample("par and asc methods disagree");
    }
    rep.body["delta"] = decimal_array(par.entries);
    values["volume"] = volume.str();
}

void verify_series(const seq& s, i64 truncation, const run_options& opt, report& rep,
                   json& values) {
    const i64 T = truncation >= 0 ? truncation : s.size() + 4;
    if (!series_check(s, T, opt))
        rep.add_counterexample("series identity fails at truncation " + std::to_string(T));
    values["truncation"] = std::to_string(T);
}

void verify_reversal_delta(const seq& s, const run_options& opt, report& rep, json& values) {
    const seq u = s.reversed();
    const delta_vector ds = delta_via_parallelepiped(s, opt);
    const delta_vector du = delta_via_parallelepiped(u, opt);
    if (!(ds == du))
        rep.add_counterexample("delta of s is " + ds.str() + ", delta of reverse(s) is " +
                               du.str());
    rep.body["delta"] = decimal_array(ds.entries);
    // the unimodular point map must carry each small dilation onto its
    // reversed counterpart
    for (i64 t = 0; t <= 2; ++t) {
        std::vector<lattice_point> mapped;
        for (const auto& x : dilation_points(s, t, opt))
            mapped.push_back(reversal_point_map(s, t, x));
        std::sort(mapped.begin(), mapped.end());
        if (mapped != dilation_points(u, t, opt))
            rep.add_counterexample("point map fails on dilation t=" + std::to_string(t));
    }
    values["dilations_checked"] = "0,1,2";
}

void run_verify(const cli_state& st, report& rep) {
    const seq s = seq::parse(st.seq_text);
    const run_options opt = options_of(st);
    json values = json::object();
    if (st.property == "bijection")
        verify_bijection(s, opt, rep, values);
    else if (st.property == "grading")
        verify_grading(s, opt, rep, values);
    else if (st.property == "rev")
        verify_rev(s, opt, rep, values);
    else if (st.property == "tilde")
        verify_tilde(s, opt, rep, values);
    else if (st.property == "s1")
        verify_s1(s, opt, rep, values);
    else if (st.property == "prop64")
        verify_inversion_bijection(s, opt, rep, values);
    else if (st.property == "volume")
        verify_volume(s, opt, rep, values);
    else if (st.property == "series")
        verify_series(s, st.truncation, opt, rep, values);
    else if (st.property == "reversal-delta")
        verify_reversal_delta(s, opt, rep, values);
    else
        throw std::invalid_argument("unknown property '" + st.property + "'");
    values["verdict"] = rep.failed ? "fail" : "pass";
    rep.body["values"] = values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact delta-vectors, Ehrhart values and remainder bijections "
                 "of lecture hall polytopes"};
    app.require_subcommand(1);
    cli_state st;

    if (const char* env_cap = std::getenv("LHALL_MAX_POINTS")) {
        try {
            st.max_points = std::stoll(env_cap);
        } catch (const std::exception&) {
            std::cerr << "invalid LHALL_MAX_POINTS value '" << env_cap << "'\n";
            return kExitInvalidInput;
        }
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seq", st.seq_text, "sequence: csv (\"2,3,1\"), lecture:n or anti:n")
            ->required();
        cmd->add_option("--format", st.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "plain"}));
        cmd->add_option("--max-points", st.max_points, "enumeration cap in points");
        cmd->add_flag("--parallel", st.parallel, "enable deterministic parallel enumeration");
    };

    CLI::App* cmd_delta = app.add_subcommand("delta", "delta-vector of the polytope");
    add_common(cmd_delta);
    st.method = "all";
    cmd_delta->add_option("--method", st.method, "par | des | asc | all")
        ->check(CLI::IsMember({"par", "des", "asc", "all"}));

    CLI::App* cmd_ehrhart = app.add_subcommand("ehrhart", "lattice points of the t-th dilation");
    add_common(cmd_ehrhart);
    cmd_ehrhart->add_option("--t", st.t, "dilation factor")->required();
    cmd_ehrhart->add_option("--method", st.method, "direct | delta | both")
        ->check(CLI::IsMember({"direct", "delta", "both"}));

    CLI::App* cmd_enumerate =
        app.add_subcommand("enumerate", "lattice points of the parallelepiped, graded");
    add_common(cmd_enumerate);
    cmd_enumerate->add_flag("--star", st.star, "enumerate over s* instead of s");

    CLI::App* cmd_map = app.add_subcommand("map", "apply one bijection to one input");
    add_common(cmd_map);
    cmd_map
        ->add_option("--op", st.op,
                     "rem | rem-inv | rem-bar | phi | gamma | prop64 | reversal-point")
        ->required()
        ->check(CLI::IsMember(
            {"rem", "rem-inv", "rem-bar", "phi", "gamma", "prop64", "reversal-point"}));
    cmd_map->add_option("--input", st.input_text, "point or word, csv")->required();
    cmd_map->add_option("--q", st.q_text, "shift word for rem/rem-bar/phi/rem-inv");
    cmd_map->add_option("--t", st.t, "dilation factor for reversal-point");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run one verification suite");
    add_common(cmd_verify);
    cmd_verify
        ->add_option("--property", st.property,
                     "bijection | grading | rev | tilde | s1 | prop64 | volume | series | "
                     "reversal-delta")
        ->required()
        ->check(CLI::IsMember({"bijection", "grading", "rev", "tilde", "s1", "prop64", "volume",
                               "series", "reversal-delta"}));
    cmd_verify->add_option("--T", st.truncation, "series truncation order (default n+4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    // default both/all when --method was not given
    if (cmd_ehrhart->parsed() && st.method == "all")
        st.method = "both";

    const auto started = std::chrono::steady_clock::now();
    try {
        const std::string command = app.get_subcommands().front()->get_name();
        report rep(command, seq::parse(st.seq_text),
                   (cmd_delta->parsed() || cmd_ehrhart->parsed())
                       ? std::optional<std::string>(st.method)
                       : std::nullopt);

        if (cmd_delta->parsed())
            run_delta(st, rep);
        else if (cmd_ehrhart->parsed())
            run_ehrhart(st, rep);
        else if (cmd_enumerate->parsed())
            run_enumerate(st, rep);
        else if (cmd_map->parsed())
            run_map(st, rep);
        else
            run_verify(st, rep);

        const char* timing = std::getenv("LHALL_TIMING");
        if (!timing || std::string(timing) != "off") {
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started);
            rep.body["elapsed_ms"] = std::to_string(elapsed.count());
        }

        if (st.format == "json")
            std::cout << rep.body.dump() << "\n";
        else if (st.format == "csv")
            print_csv(rep, std::cout);
        else
            print_plain(rep, std::cout);
        return rep.failed ? kExitVerificationFailure : kExitOk;
    } catch (const cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}

#pragma once

#include <orbk/chart.hpp>
#include <orbk/errors.hpp>
#include <orbk/gkm.hpp>
#include <orbk/json_io.hpp>
#include <orbk/oracle.hpp>
#include <orbk/svg.hpp>
#include <orbk/toric.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace orbk::cli {

enum ExitCode : int {
    Ok = 0,
    Internal = 1,
    Invalid = 2,
    NonRegular = 3,
    NoProper = 4,
    Inadmissible = 5,
    OracleBounds = 6,
};

struct Options {
    std::string input;
    std::string xi;
    std::string json_out;
    std::string svg_out;
    std::string circle;
    std::string level;
};

namespace detail {

using io::Json;

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write output file " + path);
    out << text;
}

inline Json error_json(int code, const std::string& type, const std::string& message) {
    return Json{{"error", Json{{"code", code}, {"type", type}, {"message", message}}}};
}

// Maps a failure to its exit code and error object.
inline int report_error(std::ostream& out, std::ostream& err, const std::exception_ptr& ep) {
    Json e;
    int code = Internal;
    try {
        std::rethrow_exception(ep);
    } catch (const NonRegularLevel& x) {
        code = NonRegular;
        e = error_json(code, "non_regular_level", x.what());
        if (!x.vertex.empty()) e["error"]["vertex"] = x.vertex;
        else e["error"]["support"] = io::support_json(x.support);
    } catch (const NotProper& x) {
        code = NoProper;
        e = error_json(code, "not_proper", x.what());
        e["error"]["ray"] = io::integers_json(x.ray);
    } catch (const NonGenericXi& x) {
        code = Invalid;
        e = error_json(code, "non_generic_xi", x.what());
        e["error"]["support"] = io::support_json(x.support);
        e["error"]["coordinate"] = x.coordinate + 1;
    } catch (const InadmissibleCircle& x) {
        code = Inadmissible;
        e = error_json(code, "inadmissible_circle", x.what());
        Json edges = Json::array();
        for (auto i : x.edges) edges.push_back(i + 1);
        e["error"]["edges"] = std::move(edges);
    } catch (const OracleBoundsExceeded& x) {
        code = OracleBounds;
        e = error_json(code, "oracle_bounds_exceeded", x.what());
    } catch (const InvalidInput& x) {
        code = Invalid;
        e = error_json(code, "invalid_input", x.what());
    } catch (const std::exception& x) {
        e = error_json(code, "internal", x.what());
    }
    out << io::dump(e);
    err << "orbk: error: " << e["error"]["message"].get<std::string>() << "\n";
    return code;
}

inline void emit(std::ostream& out, const Options& o, const Json& doc) {
    if (o.json_out.empty()) out << io::dump(doc);
    else write_file(o.json_out, io::dump(doc));
}

inline std::optional<RatVec> xi_option(const Options& o) {
    if (o.xi.empty()) return std::nullopt;
    return io::parse_rational_csv(o.xi, "--xi");
}

struct ToricRun {
    ToricModel model;
    RatVec xi;
};

inline ToricRun load_toric(const Options& o) {
    auto in = io::parse_toric(io::read_document(o.input));
    std::optional<RatVec> xi = xi_option(o);
    if (!xi) xi = in.xi;
    if (xi && xi->size() != in.model.num_coordinates()) throw InvalidInput("--xi: length must equal the number of columns");
    if (!xi) xi = find_generic_xi(in.model.weights(), in.model.level());
    return {std::move(in.model), std::move(*xi)};
}

inline GkmGraph load_graph(const Json& doc) {
    const std::string kind = io::kind_of(doc);
    GkmGraph g;
    if (kind == "gkm") g = io::parse_gkm(doc);
    else if (kind == "rootsystem") g = from_root_system(io::parse_rootsystem(doc));
    else throw InvalidInput("expected a gkm or rootsystem document, got kind \"" + kind + "\"");
    const auto violations = validate_gkm(g);
    if (!violations.empty()) {
        std::string msg = "invalid GKM graph:";
        for (const auto& v : violations) msg += " [" + std::string(to_string(v.kind)) + "] " + v.message + ";";
        throw InvalidInput(msg);
    }
    return g;
}

inline std::pair<CircleSubgroup, Rational> circle_and_level(const Options& o, const GkmGraph& g) {
    if (o.circle.empty()) throw InvalidInput("--circle is required");
    if (o.level.empty()) throw InvalidInput("--level is required");
    CircleSubgroup c(io::parse_integer_csv(o.circle, "--circle"));
    if (c.b().size() != g.dimension) throw InvalidInput("--circle: length must equal the graph dimension");
    return {std::move(c), io::parse_rational_text(o.level, "--level")};
}

inline int run_toric(const Options& o, std::ostream& out) {
    const auto run = load_toric(o);
    const auto rep = korb_report(run.model, run.xi);
    emit(out, o, io::toric_report_json(run.model, run.xi, rep));
    if (!o.svg_out.empty()) write_file(o.svg_out, svg::toric_figure(run.model, rep, "toric quotient"));
    return Ok;
}

inline int run_gkm(const Options& o, std::ostream& out, bool from_roots) {
    const Json doc = io::read_document(o.input);
    if (from_roots && io::kind_of(doc) != "rootsystem") throw InvalidInput("from-roots expects a rootsystem document");
    const GkmGraph g = load_graph(doc);
    if (from_roots && o.circle.empty() && o.level.empty()) {
        emit(out, o, io::gkm_graph_json(g));
        return Ok;
    }
    const auto [c, eta] = circle_and_level(o, g);
    const auto rep = gkm_korb_report(g, c, eta);
    emit(out, o, io::gkm_report_json(g, c, eta, rep));
    if (!o.svg_out.empty()) write_file(o.svg_out, svg::gkm_figure(g, c, eta, crossing_edges(g, c, eta), "GKM quotient"));
    return Ok;
}

inline int chart_check(const Options& o, std::ostream& out, std::ostream& err) {
    const ChartModel chart = io::parse_chart(io::read_document(o.input));
    const DelzantVerdict v = semilocally_delzant_check(chart, xi_option(o));
    Json doc = io::chart_check_json(chart, v);
    int code = Ok;
    if (!v.regular()) {
        code = NonRegular;
        doc["error"] = detail::error_json(code, "non_regular_level", "condition (2) fails: the level is not regular")["error"];
        doc["error"]["support"] = io::support_json(*v.regularity.witness);
    } else if (!v.proper()) {
        code = NoProper;
        doc["error"] = detail::error_json(code, "not_proper", "condition (3) fails: xi is not proper")["error"];
        doc["error"]["ray"] = io::integers_json(*v.properness.counterexample_ray);
    }
    emit(out, o, doc);
    if (code != Ok) err << "orbk: error: " << doc["error"]["message"].get<std::string>() << "\n";
    return code;
}

inline int chart_analyze(const Options& o, std::ostream& out) {
    const ChartModel chart = io::parse_chart(io::read_document(o.input));
    const ChartReport r = chart_korb(chart, xi_option(o));
    emit(out, o, io::chart_report_json(chart, r));
    if (!o.svg_out.empty()) write_file(o.svg_out, svg::toric_figure(r.model, r.report, "chart quotient"));
    return Ok;
}

inline int run_oracle(const std::string& what, const Options& o, std::ostream& out) {
    const Json doc = io::read_document(o.input);
    const std::string kind = io::kind_of(doc);
    if (what == "sectors" && (kind == "gkm" || kind == "rootsystem")) {
        const GkmGraph g = load_graph(doc);
        const auto [c, eta] = circle_and_level(o, g);
        emit(out, o, io::gkm_report_json(g, c, eta, oracle::gkm_sectors(g, c, eta)));
        return Ok;
    }
    if (kind != "toric") throw InvalidInput("oracle " + what + " expects a toric document");
    if (what == "sectors") {
        const auto run = load_toric(o);
        emit(out, o, io::toric_report_json(run.model, run.xi, oracle::toric_sectors(run.model, run.xi)));
        return Ok;
    }
    const auto in = io::parse_toric(doc);
    if (in.model.num_coordinates() > 6) throw OracleBoundsExceeded("oracle bounds exceeded: need n <= 6");
    Json res;
    res["format"] = 1;
    if (what == "cone") {
        // Is the level in the open cone of all weight columns?
        const auto fm = oracle::cone(in.model.level(), in.model.columns());
        const auto lp = open_cone_member(in.model.level(), in.model.columns());
        res["kind"] = "cone_query";
        res["level"] = io::rationals_json(in.model.level());
        res["member"] = fm.member;
        res["witness"] = fm.member ? io::rationals_json(*fm.primal_certificate) : Json(nullptr);
        res["fast_member"] = lp.member;
        res["agree"] = fm.member == lp.member;
    } else {
        std::optional<RatVec> xi = xi_option(o);
        if (!xi) xi = in.xi;
        if (!xi) throw InvalidInput("oracle recession needs xi (document field or --xi)");
        if (xi->size() != in.model.num_coordinates()) throw InvalidInput("xi: length must equal the number of columns");
        const auto fm = oracle::properness(in.model.weights(), *xi);
        const auto lp = recession_positive(in.model.weights(), *xi);
        res["kind"] = "recession_query";
        res["xi"] = io::rationals_json(*xi);
        res["proper"] = fm.proper();
        res["certificate"] = io::certificate_json(fm);
        res["fast_proper"] = lp.proper();
        res["agree"] = fm.proper() == lp.proper();
    }
    emit(out, o, res);
    return Ok;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Additive orbifold K-theory of abelian symplectic quotients", "orbk"};
    app.require_subcommand(1);
    Options o;
    std::string action;

    auto add_common = [&](CLI::App* c, bool xi, bool circle, bool svg) {
        c->add_option("-i,--input", o.input, "input JSON document")->required();
        c->add_option("--json", o.json_out, "write the report here instead of stdout");
        if (xi) c->add_option("--xi", o.xi, "component of the moment map, comma-separated rationals");
        if (circle) {
            c->add_option("--circle", o.circle, "circle cocharacter b, comma-separated integers");
            c->add_option("--level", o.level, "level eta as p/q");
        }
        if (svg) c->add_option("--svg", o.svg_out, "write an SVG figure");
    };

    auto* toric = app.add_subcommand("toric", "toric (Delzant) quotients");
    toric->require_subcommand(1);
    auto* toric_analyze = toric->add_subcommand("analyze", "sector table and ranks");
    add_common(toric_analyze, true, false, true);

    auto* gkm = app.add_subcommand("gkm", "GKM graph quotients by a circle");
    gkm->require_subcommand(1);
    auto* gkm_analyze = gkm->add_subcommand("analyze", "crossing edges, sector table and ranks");
    add_common(gkm_analyze, false, true, true);
    auto* gkm_roots = gkm->add_subcommand("from-roots", "build the orbit graph of a root system document");
    add_common(gkm_roots, false, true, true);

    auto* chart = app.add_subcommand("chart", "linear chart data");
    chart->require_subcommand(1);
    auto* chart_check = chart->add_subcommand("check", "regularity and properness verdict");
    add_common(chart_check, true, false, false);
    auto* chart_analyze = chart->add_subcommand("analyze", "sector table of the restricted model");
    add_common(chart_analyze, true, false, true);

    auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
    oracle->require_subcommand(1);
    auto* oracle_sectors = oracle->add_subcommand("sectors", "denominator-scan sector table");
    add_common(oracle_sectors, true, true, false);
    auto* oracle_cone = oracle->add_subcommand("cone", "Fourier-Motzkin open cone membership of the level");
    add_common(oracle_cone, false, false, false);
    auto* oracle_rec = oracle->add_subcommand("recession", "Fourier-Motzkin properness of xi");
    add_common(oracle_rec, true, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        out << io::dump(detail::error_json(Invalid, "usage", e.what()));
        err << "orbk: error: " << e.what() << "\n";
        return Invalid;
    }

    try {
        if (*toric_analyze) return detail::run_toric(o, out);
        if (*gkm_analyze) return detail::run_gkm(o, out, false);
        if (*gkm_roots) return detail::run_gkm(o, out, true);
        if (*chart_check) return detail::chart_check(o, out, err);
        if (*chart_analyze) return detail::chart_analyze(o, out);
        if (*oracle_sectors) return detail::run_oracle("sectors", o, out);
        if (*oracle_cone) return detail::run_oracle("cone", o, out);
        if (*oracle_rec) return detail::run_oracle("recession", o, out);
        throw InvalidInput("no command given");
    } catch (...) {
        return detail::report_error(out, err, std::current_exception());
    }
}

}  // namespace orbk::cli

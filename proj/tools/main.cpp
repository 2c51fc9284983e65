#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quadratrix/analysis.hpp"
#include "quadratrix/catalog.hpp"
#include "quadratrix/elaborate.hpp"
#include "quadratrix/error.hpp"
#include "quadratrix/parser.hpp"
#include "quadratrix/svg_render.hpp"

namespace {

using namespace quadratrix;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw Error(Error::Kind::Usage, "cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// A program source: either "builtin:NAME" or a .construct file path.
struct Source {
    Program program;
    bool is_builtin = false;
    CatalogEntry entry;
};

Source load_source(const std::string& spec) {
    Source s;
    if (spec.rfind("builtin:", 0) == 0) {
        s.is_builtin = true;
        s.entry = builtin(spec.substr(8));
        s.program = s.entry.program;
        return s;
    }
    std::string text = read_file(spec);
    std::string name = spec;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    auto dot = name.rfind(".construct");
    if (dot != std::string::npos) name = name.substr(0, dot);
    s.program = parse(text, name);
    return s;
}

// Decimal or fraction text ("6", "6.5", "13/2") as an exact rational.
Rational parse_decimal_rational(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational::from_string(text);
    std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
    if (fp.empty()) return Rational::from_string(ip);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    mpz_class num = mpz_class(ip) * den + mpz_class(fp);
    if (neg) num = -num;
    return Rational(num, den);
}

Constructible eval_target(const std::string& text) {
    Workspace empty;
    return eval_len(parse_target_expr(text), empty);
}

std::string describe_point(const Point& p) {
    return "(" + p.x.to_decimal(20) + ", " + p.y.to_decimal(20) + ")";
}

int cmd_run(const std::string& source_spec) {
    Source src = load_source(source_spec);
    Workspace w = execute(src.program);
    for (const std::string& name : w.order) {
        const Workspace::Binding& b = w.bindings.at(name);
        if (const Point* p = std::get_if<Point>(&b)) {
            std::cout << "point " << name << " = " << describe_point(*p) << "\n";
        } else if (const Constructible* c = std::get_if<Constructible>(&b)) {
            std::cout << "len " << name << " = " << c->to_decimal(20) << "\n";
        } else {
            const GeomObject& o = std::get<GeomObject>(b);
            if (const Line* l = std::get_if<Line>(&o)) {
                std::cout << "line " << name << " = " << describe_point(l->p0) << " -> "
                          << describe_point(l->p1) << "\n";
            } else {
                const Circle& c = std::get<Circle>(o);
                std::cout << "circle " << name << " = center " << describe_point(c.center) << " radius "
                          << distance(c.center, c.through).to_decimal(20) << "\n";
            }
        }
    }
    size_t constructed = 0;
    for (const Step& s : w.trace) {
        if (s.kind != Step::Kind::LengthDef) ++constructed;
    }
    std::cout << "trace: " << w.trace.size() << " steps (" << constructed << " geometric)\n";
    return 0;
}

int cmd_verify(const std::string& source_spec, std::vector<std::string> endpoints,
               const std::string& target_text) {
    Source src = load_source(source_spec);
    std::pair<std::string, std::string> pts;
    Constructible target;
    if (endpoints.empty()) {
        if (!src.is_builtin)
            throw Error(Error::Kind::Usage, "--endpoints is required when verifying a file");
        pts = src.entry.result_points;
    } else {
        pts = {endpoints[0], endpoints[1]};
    }
    if (target_text.empty()) {
        if (!src.is_builtin)
            throw Error(Error::Kind::Usage, "--target is required when verifying a file");
        target = src.entry.target;
    } else {
        target = eval_target(target_text);
    }
    Workspace w = execute(src.program);
    Constructible measured = distance(w.point(pts.first), w.point(pts.second));
    bool ok = equals(measured, target);
    std::cout << "segment " << pts.first << pts.second << " = " << measured.to_decimal(20) << "\n";
    std::cout << "target    " << (ok ? "equals" : "differs") << " " << target.to_decimal(20) << "\n";
    std::cout << (ok ? "verified: exact equality\n" : "verification failed\n");
    return ok ? 0 : kExitVerifyFailed;
}

int cmd_approx(const std::string& name, int digits) {
    std::cout << approximant(name).value.to_decimal(digits) << "\n";
    return 0;
}

int cmd_error(const std::string& name, const std::string& target_text, int ratio_digits, bool json) {
    Constructible value;
    if (!target_text.empty()) {
        value = eval_target(target_text);
    } else if (!name.empty()) {
        value = approximant(name).value;
    } else {
        throw Error(Error::Kind::Usage, "error needs an approximant name or --target");
    }
    ErrorReport r = pi_error(value, ratio_digits);
    std::cout << (json ? error_report_to_json(r) : error_report_to_text(r));
    return 0;
}

int cmd_metrics(const std::string& source_spec, const std::string& warn_above,
                const std::string& warn_below, bool json) {
    Source src = load_source(source_spec);
    MetricsReport r = metrics(src.program);
    std::cout << (json ? metrics_to_json(r) : metrics_to_text(r));
    if (!warn_above.empty() && r.has_lengths) {
        Constructible limit{parse_decimal_rational(warn_above)};
        if (r.max_length > limit)
            std::cout << "warning: max_length " << r.max_length_decimal() << " exceeds " << warn_above
                      << "\n";
    }
    if (!warn_below.empty() && r.has_lengths) {
        Constructible limit{parse_decimal_rational(warn_below)};
        if (r.min_positive_length < limit)
            std::cout << "warning: min_positive_length " << r.min_positive_length_decimal()
                      << " is below " << warn_below << "\n";
    }
    return 0;
}

int cmd_render(const std::string& source_spec, const std::string& out_path, RenderStyle style,
               std::string circle, std::vector<std::string> square, bool no_highlight) {
    Source src = load_source(source_spec);
    Highlight hl;
    if (!no_highlight) {
        if (src.is_builtin) {
            hl.circle = src.entry.highlight_circle;
            hl.square = src.entry.highlight_square;
        }
        if (!circle.empty()) hl.circle = circle;
        if (!square.empty()) hl.square = {square[0], square[1]};
    }
    Workspace w = execute(src.program);
    std::string svg = render_svg(w, hl, style);
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) throw Error(Error::Kind::Usage, "cannot write '" + out_path + "'");
    out << svg;
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_catalog_list() {
    for (const std::string& name : catalog_names()) {
        std::cout << name << "  " << builtin(name).description << "\n";
    }
    std::cout << "approximants:";
    for (const std::string& name : approximant_names()) std::cout << " " << name;
    std::cout << "\n";
    return 0;
}

int cmd_catalog_show(const std::string& name) {
    std::cout << builtin(name).source_text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratrix: exact ruler-and-compass construction engine"};
    app.require_subcommand(1);

    std::string source, out_path, target_text, approx_name, circle_flag;
    std::string warn_above, warn_below, show_name;
    std::vector<std::string> endpoints, square_flag;
    int digits = 10, ratio_digits = 12;
    bool json = false, no_highlight = false;
    RenderStyle style;

    CLI::App* run = app.add_subcommand("run", "execute a construction and print its exact bindings");
    run->add_option("source", source, "a .construct file or builtin:NAME")->required();

    CLI::App* verify = app.add_subcommand("verify", "check a result segment against an exact target length");
    verify->add_option("source", source, "a .construct file or builtin:NAME")->required();
    verify->add_option("--endpoints", endpoints, "the two point names of the result segment")
        ->expected(2);
    verify->add_option("--target", target_text,
                       "exact target length (rationals, + - * /, sqrt); defaults to the builtin claim");

    CLI::App* approx = app.add_subcommand("approx", "print a registered approximant, correctly rounded");
    approx->add_option("name", approx_name, "approximant name (see catalog list)")->required();
    approx->add_option("--digits", digits, "fractional digits (default 10)");

    CLI::App* error_cmd = app.add_subcommand("error", "digit accuracy of a value against pi");
    error_cmd->add_option("name", approx_name, "approximant name");
    error_cmd->add_option("--target", target_text, "explicit value (rationals and sqrt)");
    error_cmd->add_option("--ratio-digits", ratio_digits, "fractional digits of the ratio (default 12)");
    error_cmd->add_flag("--json", json, "machine-readable output");

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "efficiency survey of a construction");
    metrics_cmd->add_option("source", source, "a .construct file or builtin:NAME")->required();
    metrics_cmd->add_option("--warn-above", warn_above, "warn when max_length exceeds this");
    metrics_cmd->add_option("--warn-below", warn_below, "warn when min_positive_length is below this");
    metrics_cmd->add_flag("--json", json, "machine-readable output");

    CLI::App* render = app.add_subcommand("render", "render a construction to SVG");
    render->add_option("source", source, "a .construct file or builtin:NAME")->required();
    render->add_option("--out", out_path, "output SVG path")->required();
    render->add_option("--size", style.canvas, "canvas width in pixels (default 720)");
    render->add_option("--margin", style.margin, "margin in pixels (default 40)");
    render->add_option("--precision", style.precision, "coordinate decimal digits (default 12)");
    render->add_option("--circle", circle_flag, "highlight this circle object");
    render->add_option("--square", square_flag, "highlight the square on this segment (two point names)")
        ->expected(2);
    render->add_flag("--no-highlight", no_highlight, "suppress the shaded area comparison");

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list or show the built-in constructions");
    CLI::App* list_cmd = catalog_cmd->add_subcommand("list", "list built-in programs and approximants");
    CLI::App* show_cmd = catalog_cmd->add_subcommand("show", "print a built-in program");
    show_cmd->add_option("name", show_name, "program name")->required();
    catalog_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(source);
        if (verify->parsed()) return cmd_verify(source, endpoints, target_text);
        if (approx->parsed()) return cmd_approx(approx_name, digits);
        if (error_cmd->parsed()) return cmd_error(approx_name, target_text, ratio_digits, json);
        if (metrics_cmd->parsed()) return cmd_metrics(source, warn_above, warn_below, json);
        if (render->parsed()) return cmd_render(source, out_path, style, circle_flag, square_flag, no_highlight);
        if (catalog_cmd->parsed()) {
            if (list_cmd->parsed()) return cmd_catalog_list();
            if (show_cmd->parsed()) return cmd_catalog_show(show_name);
        }
        std::cerr << "error: no subcommand\n";
        return kExitError;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const quadratrix::Error& e) {
        std::cerr << "error: " << e.message() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

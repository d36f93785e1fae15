#include "rumkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rumkit/check.hpp"
#include "rumkit/framework_io.hpp"
#include "rumkit/polynomial.hpp"
#include "rumkit/rigidity.hpp"
#include "rumkit/semi_infinite.hpp"
#include "rumkit/spectrum.hpp"

namespace rumkit::cli {

namespace {

struct InputOptions {
    std::string generator;
    std::string input_path;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    auto* g = cmd->add_option("--generator", in.generator, "built-in framework name");
    auto* f = cmd->add_option("--input", in.input_path, "framework JSON file");
    g->excludes(f);
    f->excludes(g);
}

CrystalFramework load_framework(const InputOptions& in) {
    if (!in.generator.empty()) return make_generator(in.generator);
    if (in.input_path.empty())
        throw ValidationError("no input: pass --generator NAME or --input FILE");
    std::ifstream file(in.input_path);
    if (!file) throw IoError("cannot open '" + in.input_path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_framework(buffer.str());
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError("cannot write '" + path + "'");
    file << content;
    if (!file) throw IoError("write failed for '" + path + "'");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_complex(std::complex<double> z, double imag_tol = 1e-12) {
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z.real())))
        return fmt(z.real());
    return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

template <class Coeff>
std::string poly_with_name_impl(const BasicLaurentPoly<Coeff>& p) {
    const auto vars = variable_names(p.rank());
    std::string head = "p(";
    for (size_t i = 0; i < vars.size(); ++i) head += (i ? "," : "") + vars[i];
    head += ") = ";
    return head + render_poly(p, vars, true);
}

std::string poly_with_name(const LaurentPoly& p) { return poly_with_name_impl(p); }
std::string poly_with_name_float(const FloatLaurentPoly& p) { return poly_with_name_impl(p); }

int cmd_info(const CrystalFramework& fw, std::ostream& out) {
    out << "|Fv|=" << fw.vertex_count() << " |Fe|=" << fw.edge_count() << " d=" << fw.dim()
        << " maxwell=" << (fw.maxwell_equilibrium() ? "true" : "false") << "\n";
    out << "lattice rank " << fw.rank() << ", radicand " << fw.framework_radicand()
        << ", max edge offset " << fw.max_edge_offset() << "\n";
    return 0;
}

int cmd_symbol(const CrystalFramework& fw, const std::string& out_path, std::ostream& out) {
    const SymbolMatrix phi = build_symbol(fw);
    std::string text = format_laurent_matrix(phi.mat);
    write_output(out_path, text, out);
    return 0;
}

int cmd_polynomial(const CrystalFramework& fw, bool as_json, bool backend_float,
                   const std::string& out_path, std::ostream& out) {
    const SymbolMatrix phi = build_symbol(fw);
    if (!fw.maxwell_equilibrium())
        throw ValidationError("crystal polynomial needs a Maxwell-square framework (" +
                              std::to_string(fw.edge_count()) + " edges vs " +
                              std::to_string(fw.dim() * fw.vertex_count()) + " columns)");
    std::string text;
    if (backend_float) {
        const FloatLaurentPoly det = laurent_determinant(to_float(phi.mat));
        double max_abs = 0.0;
        for (const auto& [e, c] : det.terms()) {
            (void)e;
            max_abs = std::max(max_abs, std::abs(c));
        }
        if (max_abs <= 1e-12) {
            write_output(out_path, "identically zero\n", out);
            return 0;
        }
        // Same normalization as the exact path, plus a relative cutoff for
        // float cancellation debris.
        const ExpVec mins = det.min_exponents();
        ExpVec gamma(mins.size());
        for (size_t i = 0; i < mins.size(); ++i) gamma[i] = -mins[i];
        FloatLaurentPoly shifted = det.monomial_shift(gamma);
        const double lead = shifted.leading_term().second;
        FloatLaurentPoly cleaned(shifted.rank());
        for (const auto& [e, c] : shifted.terms()) {
            const double scaled = c / lead;
            if (std::abs(scaled) > 1e-9) cleaned.add_term(e, scaled);
        }
        text = poly_with_name_float(cleaned) + "\n";
        write_output(out_path, text, out);
        return 0;
    }
    const LaurentPoly det = determinant(phi);
    if (det.is_zero()) {
        write_output(out_path, "identically zero\n", out);
        return 0;
    }
    const CrystalPolynomial pc = crystal_polynomial(det);
    if (as_json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        // Terms in descending grlex order, matching the text rendering.
        std::vector<const std::pair<const ExpVec, ExactScalar>*> order;
        for (const auto& t : pc.poly.terms()) order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
            return grlex_compare(a->first, b->first) > 0;
        });
        for (const auto* t : order) {
            nlohmann::ordered_json term;
            term["exponents"] = t->first;
            term["coeff"] = t->second.to_string();
            arr.push_back(std::move(term));
        }
        text = arr.dump(2) + "\n";
    } else {
        text = poly_with_name(pc.poly) + "\n";
    }
    write_output(out_path, text, out);
    return 0;
}

int cmd_spectrum(const CrystalFramework& fw, int resolution, double threshold,
                 const std::string& mode_name, const std::string& format, bool full_field,
                 const std::string& out_path, std::ostream& out) {
    const SpectrumMode mode =
        mode_name == "kernel" ? SpectrumMode::KernelMode : SpectrumMode::RowDeficiency;
    const SpectrumGrid grid = sigma_min_field(fw, resolution, mode);
    std::string text;
    if (format == "csv") {
        // Either the thresholded RUM point set or, with --full, every grid
        // point; rows are j_1..j_d, k_1..k_d, sigma_min either way.
        const SpectrumReport report =
            full_field ? rum_points(grid, 1e300) : rum_points(grid, threshold);
        std::string header;
        for (int i = 0; i < fw.rank(); ++i) header += "j" + std::to_string(i + 1) + ",";
        for (int i = 0; i < fw.rank(); ++i) header += "k" + std::to_string(i + 1) + ",";
        text += header + "sigma_min\n";
        for (const auto& p : report.points) {
            std::string line;
            for (int j : p.indices) line += std::to_string(j) + ",";
            for (double k : p.wave_vector) line += fmt(k) + ",";
            line += fmt(p.sigma_min);
            text += line + "\n";
        }
    } else if (format == "pgm") {
        if (fw.rank() != 2)
            throw ValidationError("pgm output needs a rank-2 framework");
        const int n = resolution;
        text = "P2\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
        // j2 runs over rows, j1 over columns.
        for (int j2 = 0; j2 < n; ++j2) {
            std::string line;
            for (int j1 = 0; j1 < n; ++j1) {
                const std::vector<int> idx = {j1, j2};
                const double s = grid.sigma[static_cast<size_t>(grid.index_of(idx))];
                const double v = -std::log10(s + 1e-16) / 16.0;
                const int pixel = static_cast<int>(std::lround(255.0 * std::min(1.0, v)));
                line += (j1 ? " " : "") + std::to_string(std::max(0, pixel));
            }
            text += line + "\n";
        }
    } else {
        throw ValidationError("unknown spectrum output format '" + format + "'");
    }
    write_output(out_path, text, out);
    return 0;
}

int cmd_dimension(const CrystalFramework& fw, std::vector<int> resolutions, double threshold,
                  const std::string& mode_name, std::ostream& out) {
    const SpectrumMode mode =
        mode_name == "kernel" ? SpectrumMode::KernelMode : SpectrumMode::RowDeficiency;
    const RumDimensionEstimate est =
        rum_dimension_estimate(fw, std::move(resolutions), mode, threshold);
    out << "resolution  count\n";
    for (size_t i = 0; i < est.resolutions.size(); ++i)
        out << est.resolutions[i] << "  " << est.counts[i] << "\n";
    out << "slope " << fmt(est.slope) << "\n";
    out << "RUM dimension " << est.dimension << "\n";
    return 0;
}

int cmd_localflex(const CrystalFramework& fw, int box_size, const std::string& out_path,
                  std::ostream& out) {
    const Box box = Box::cube(fw.rank(), 0, box_size);
    const auto flex = local_flex_search(fw, box);
    if (!flex) {
        write_output(out_path, "none up to box [0," + std::to_string(box_size) + ")^" +
                                   std::to_string(fw.rank()) + "\n",
                     out);
        return 0;
    }
    std::string text = "kappa";
    for (int i = 0; i < fw.rank(); ++i) text += ",cell" + std::to_string(i + 1);
    for (int s = 0; s < fw.dim(); ++s)
        text += ",v" + std::to_string(s + 1) + "_re,v" + std::to_string(s + 1) + "_im";
    text += "\n";
    for (const auto& [key, v] : flex->values()) {
        std::string line = std::to_string(key.first + 1);
        for (int c : key.second) line += "," + std::to_string(c);
        for (Eigen::Index s = 0; s < v.size(); ++s)
            line += "," + fmt(v(s).real()) + "," + fmt(v(s).imag());
        text += line + "\n";
    }
    const FlexCheck check = is_infinitesimal_flex(fw, *flex, 1e-8);
    text += "max residual " + fmt(check.max_residual) + "\n";
    write_output(out_path, text, out);
    return 0;
}

int cmd_supercell(const CrystalFramework& fw, const std::vector<int>& m,
                  const std::string& out_path, std::ostream& out) {
    const CrystalFramework super = supercell(fw, m);
    write_output(out_path, serialize_framework(super), out);
    return 0;
}

int cmd_rooted(const CrystalFramework& fw, const std::vector<int>& remove_vertices_1based,
               const std::vector<int>& remove_edges_1based, double tol, std::ostream& out) {
    std::vector<int> rv, re;
    for (int v : remove_vertices_1based) rv.push_back(v - 1);
    for (int e : remove_edges_1based) re.push_back(e - 1);
    const RootedSymbol rs = rooted_symbol(fw, rv, re);
    out << "Phi0 is " << rs.phi0.rows << "x" << rs.phi0.cols << "\n";
    const RootReport report = root_analysis(rs, tol);
    const auto vars = variable_names(1);
    out << "det(Phi0) = " << render_poly(report.determinant, vars, true) << "\n";
    if (report.det_zero) {
        out << "verdict: " << rooted_rigidity_verdict(report).summary << "\n";
        return 0;
    }
    out << "cleared q(z) = " << render_poly(report.cleared, vars, true) << "  (shift z^"
        << report.shift << ")\n";
    if (report.roots.empty()) out << "no roots: determinant has constant modulus on the circle\n";
    for (const auto& r : report.roots) {
        out << "root " << fmt_complex(r.value) << "  multiplicity " << r.multiplicity << "  ";
        switch (r.location) {
            case RootLocation::OnCircle:
                out << "on the unit circle\n";
                break;
            case RootLocation::Inside:
                out << "inside the unit circle  decay ratio " << fmt_complex(r.decay_ratio)
                    << "  decays toward -infinity cells\n";
                break;
            case RootLocation::Outside:
                out << "outside the unit circle  decay ratio " << fmt_complex(r.decay_ratio)
                    << "  decays toward +infinity cells\n";
                break;
        }
    }
    const RootedVerdict verdict = rooted_rigidity_verdict(report);
    out << "verdict: " << verdict.summary << "\n";
    return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rigid unit mode analysis of crystal frameworks"};
    app.require_subcommand(1);

    InputOptions in;
    std::string out_path;
    unsigned long seed = kDefaultSeed;

    auto* info = app.add_subcommand("info", "motif and counting summary");
    add_input_options(info, in);

    auto* symbol = app.add_subcommand("symbol", "print the symbol matrix");
    add_input_options(symbol, in);
    symbol->add_option("--out", out_path, "output file (default stdout)");

    auto* polynomial = app.add_subcommand("polynomial", "crystal polynomial of a square symbol");
    add_input_options(polynomial, in);
    bool poly_json = false;
    std::string backend = "exact";
    polynomial->add_flag("--json", poly_json, "emit the JSON term list");
    polynomial->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    polynomial->add_option("--out", out_path, "output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "sample the RUM spectrum on the torus");
    add_input_options(spectrum, in);
    int resolution = 32;
    double threshold = 1e-8;
    std::string mode = "rows";
    std::string format = "csv";
    bool full_field = false;
    spectrum->add_option("--resolution", resolution, "grid points per dimension");
    spectrum->add_option("--threshold", threshold, "relative sigma threshold");
    spectrum->add_option("--mode", mode, "rows|kernel")->check(CLI::IsMember({"rows", "kernel"}));
    spectrum->add_option("--output", format, "csv|pgm")->check(CLI::IsMember({"csv", "pgm"}));
    spectrum->add_flag("--full", full_field, "emit every grid point, not just the sublevel set");
    spectrum->add_option("--out", out_path, "output file (default stdout)");

    auto* dimension = app.add_subcommand("dimension", "RUM dimension estimate");
    add_input_options(dimension, in);
    std::vector<int> resolutions = {16, 32, 64};
    dimension->add_option("--resolutions", resolutions, "sampling resolutions")->delimiter(',');
    dimension->add_option("--threshold", threshold, "relative sigma threshold");
    dimension->add_option("--mode", mode, "rows|kernel")->check(CLI::IsMember({"rows", "kernel"}));

    auto* localflex = app.add_subcommand("localflex", "search for a finitely supported flex");
    add_input_options(localflex, in);
    int box_size = 4;
    localflex->add_option("--box", box_size, "search box size per dimension");
    localflex->add_option("--out", out_path, "output file (default stdout)");

    auto* super = app.add_subcommand("supercell", "write an enlarged-cell framework file");
    add_input_options(super, in);
    std::vector<int> multipliers;
    super->add_option("--m", multipliers, "cell multipliers, one per period")
        ->delimiter(',')
        ->required();
    super->add_option("--out", out_path, "output file (default stdout)");

    auto* rooted = app.add_subcommand("rooted", "base-rooted (semi-infinite) symbol analysis");
    add_input_options(rooted, in);
    std::vector<int> rm_vertices, rm_edges;
    double rooted_tol = 1e-9;
    rooted->add_option("--remove-vertices", rm_vertices, "1-based supporting vertex indices")
        ->delimiter(',');
    rooted->add_option("--remove-edges", rm_edges, "1-based base edge indices")->delimiter(',');
    rooted->add_option("--tol", rooted_tol, "on-circle tolerance");

    auto* check = app.add_subcommand("check", "run the cross-module invariant suite");
    add_input_options(check, in);
    check->add_option("--seed", seed, "random seed for the sampled invariants");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        (code == 0 ? out : err) << os.str();
        return code == 0 ? 0 : 1;
    }

    const CrystalFramework fw = load_framework(in);
    if (info->parsed()) return cmd_info(fw, out);
    if (symbol->parsed()) return cmd_symbol(fw, out_path, out);
    if (polynomial->parsed())
        return cmd_polynomial(fw, poly_json, backend == "float", out_path, out);
    if (spectrum->parsed())
        return cmd_spectrum(fw, resolution, threshold, mode, format, full_field, out_path, out);
    if (dimension->parsed()) return cmd_dimension(fw, resolutions, threshold, mode, out);
    if (localflex->parsed()) return cmd_localflex(fw, box_size, out_path, out);
    if (super->parsed()) return cmd_supercell(fw, multipliers, out_path, out);
    if (rooted->parsed()) return cmd_rooted(fw, rm_vertices, rm_edges, rooted_tol, out);
    if (check->parsed()) {
        CheckOptions opts;
        opts.seed = seed;
        const int failures = run_invariant_suite(fw, out, opts);
        out << (failures == 0 ? "all invariants hold" : std::to_string(failures) + " failure(s)")
            << "\n";
        return failures == 0 ? 0 : 1;
    }
    throw ValidationError("no command given");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rumkit::cli

#include "covsep/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "covsep/document.hpp"
#include "covsep/errors.hpp"
#include "covsep/family.hpp"
#include "covsep/gaussian_state.hpp"
#include "covsep/numerics.hpp"
#include "covsep/phase_space.hpp"
#include "covsep/separability.hpp"
#include "covsep/version.hpp"

namespace covsep {

namespace {

using nlohmann::json;

struct Options {
    ToleranceConfig tol;
    bool as_json = false;
};

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const NonFiniteInput*>(&e) || dynamic_cast<const ParamDomain*>(&e) ||
        dynamic_cast<const NotSymmetric*>(&e) || dynamic_cast<const NotAState*>(&e) ||
        dynamic_cast<const NotPpt*>(&e) || dynamic_cast<const SingularOrbit*>(&e) ||
        dynamic_cast<const NotHermitian*>(&e))
        return kExitInputError;
    return kExitNumericalFailure;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

json matrix_json(const RealMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < m.cols(); ++k)
            row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const RealVector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i)
        a.push_back(v(i));
    return a;
}

json complex_vector_json(const ComplexVector& v) {
    json re = json::array(), im = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json report_shell(const char* command, const Options& opt) {
    return json{{"tool", std::string(kToolName)},
                {"version", std::string(kVersion)},
                {"command", command},
                {"tolerances",
                 {{"rtol", opt.tol.rtol}, {"ntol", opt.tol.ntol}, {"btol", opt.tol.btol}}}};
}

const char* failure_name(ValidationReport::Failure f) {
    switch (f) {
        case ValidationReport::Failure::None: return "none";
        case ValidationReport::Failure::DimensionMismatch: return "dimension_mismatch";
        case ValidationReport::Failure::NotSymmetric: return "not_symmetric";
        case ValidationReport::Failure::NotAState: return "not_a_state";
    }
    return "unknown";
}

void print_matrix(std::ostream& out, const RealMatrix& m, const char* indent) {
    for (Index i = 0; i < m.rows(); ++i) {
        out << indent;
        for (Index k = 0; k < m.cols(); ++k)
            out << (k ? " " : "") << std::setprecision(12) << m(i, k);
        out << "\n";
    }
}

void print_eigenvalues(std::ostream& out, const RealVector& v) {
    for (Index i = 0; i < v.size(); ++i)
        out << (i ? " " : "  ") << std::setprecision(12) << v(i);
    out << "\n";
}

json trace_json(const std::vector<SubtractionStep>& trace) {
    json steps = json::array();
    for (const SubtractionStep& step : trace)
        steps.push_back(json{{"xi", vector_json(step.xi)}, {"epsilon", step.epsilon}});
    return steps;
}

void print_trace(std::ostream& out, const std::vector<SubtractionStep>& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << "step " << (i + 1) << ": epsilon = " << std::setprecision(12)
            << trace[i].epsilon << ", xi =";
        for (Index k = 0; k < trace[i].xi.size(); ++k)
            out << " " << std::setprecision(12) << trace[i].xi(k);
        out << "\n";
    }
}

int cmd_validate(const std::string& file, const Options& opt, std::ostream& out) {
    const MatrixDocument doc = read_document(file);
    const ValidationReport report = check_state(doc.gamma, doc.shape(), opt.tol);
    if (opt.as_json) {
        json j = report_shell("validate", opt);
        j["file"] = file;
        j["valid"] = report.ok;
        j["failure"] = failure_name(report.failure);
        j["symmetry_residual"] = report.symmetry_residual;
        j["min_eigenvalue"] = report.min_eigenvalue;
        if (!report.ok && report.worst_eigenvector.size() > 0)
            j["worst_eigenvector"] = complex_vector_json(report.worst_eigenvector);
        out << j.dump(2) << "\n";
    } else {
        out << "file: " << file << "\n"
            << "valid: " << (report.ok ? "yes" : "no") << "\n";
        if (!report.ok)
            out << "failure: " << failure_name(report.failure) << "\n";
        out << "symmetry residual: " << std::setprecision(12) << report.symmetry_residual
            << "\n"
            << "min eigenvalue of gamma + i*sigma: " << std::setprecision(12)
            << report.min_eigenvalue << "\n";
    }
    return kExitOk;
}

int cmd_eig(const std::string& file, const Options& opt, std::ostream& out) {
    const MatrixDocument doc = read_document(file);
    const SystemShape shape = doc.shape();
    const RealMatrix sigma = standard_symplectic(shape).sigma;
    const RealMatrix sigma_tilde = partial_transpose_form(standard_symplectic(shape));
    const Complex i_unit(0.0, 1.0);
    const EigenSystem state_form =
        hermitian_eigen(doc.gamma.cast<Complex>() + i_unit * sigma.cast<Complex>(),
                        opt.tol.herm_tol);
    const EigenSystem pt_form =
        hermitian_eigen(doc.gamma.cast<Complex>() + i_unit * sigma_tilde.cast<Complex>(),
                        opt.tol.herm_tol);
    if (opt.as_json) {
        json j = report_shell("eig", opt);
        j["file"] = file;
        j["state_form"] = vector_json(state_form.eigenvalues);
        j["partial_transpose_form"] = vector_json(pt_form.eigenvalues);
        out << j.dump(2) << "\n";
    } else {
        out << "file: " << file << "\n" << "eigenvalues of gamma + i*sigma:\n";
        print_eigenvalues(out, state_form.eigenvalues);
        out << "eigenvalues of gamma + i*sigma_tilde:\n";
        print_eigenvalues(out, pt_form.eigenvalues);
    }
    return kExitOk;
}

struct FileOutcome {
    int code = kExitOk;
    json report;
    std::string human;
};

FileOutcome classify_one(const std::string& file, const Options& opt, bool with_trace) {
    FileOutcome outcome;
    std::ostringstream text;
    json j = report_shell("classify", opt);
    j["file"] = file;
    text << "file: " << file << "\n";
    try {
        const MatrixDocument doc = read_document(file);
        const Classification cls = classify(doc.gamma, doc.shape(), opt.tol);
        j["verdict"] = std::string(to_string(cls.verdict));
        text << "verdict: " << to_string(cls.verdict) << "\n";

        if (cls.violation) {
            const ViolationRecord& v = *cls.violation;
            json vj;
            vj["partial_transpose"] = v.partial_transpose;
            vj["value"] = v.value;
            if (cls.verdict == Verdict::Invalid)
                vj["kind"] = failure_name(v.kind);
            if (v.eigenvector.size() > 0)
                vj["eigenvector"] = complex_vector_json(v.eigenvector);
            j["violation"] = std::move(vj);
            if (cls.verdict == Verdict::Invalid)
                text << "failure: " << failure_name(v.kind) << "\n"
                     << "violation value: " << std::setprecision(12) << v.value << "\n";
            else
                text << "min eigenvalue of gamma + i*sigma_tilde: "
                     << std::setprecision(12) << v.value << "\n";
        }
        if (cls.witness) {
            j["witness"] = {{"gamma_a", matrix_json(cls.witness->gamma_a)},
                            {"gamma_b", matrix_json(cls.witness->gamma_b)}};
            text << "witness block gamma_a:\n";
            print_matrix(text, cls.witness->gamma_a, "  ");
            text << "witness block gamma_b:\n";
            print_matrix(text, cls.witness->gamma_b, "  ");
        }
        if (cls.report) {
            const NullSpaceReport& r = *cls.report;
            j["null_space"] = {{"state_null_dim", r.n_basis.cols()},
                               {"pt_null_dim", r.nt_basis.cols()},
                               {"joint_span_dim", r.joint_span_dim},
                               {"phase_space_dim", r.joint.ambient_dim()}};
            text << "null dimensions: state " << r.n_basis.cols() << ", partial transpose "
                 << r.nt_basis.cols() << "\n"
                 << "joint null span dimension: " << r.joint_span_dim << " of "
                 << r.joint.ambient_dim() << "\n";
        }
        if (cls.minimal_point) {
            j["minimal_point"] = matrix_json(*cls.minimal_point);
            text << "descent endpoint:\n";
            print_matrix(text, *cls.minimal_point, "  ");
        }
        if (!cls.trace.empty() || cls.verdict == Verdict::Separable) {
            j["steps"] = cls.trace.size();
            text << "descent steps: " << cls.trace.size() << "\n";
        }
        if (with_trace && !cls.trace.empty()) {
            j["trace"] = trace_json(cls.trace);
            print_trace(text, cls.trace);
        }
        j["tolerance_warning"] = cls.tolerance_warning;
        if (cls.tolerance_warning)
            text << "warning: certificate construction hit tolerance limits\n";
    } catch (const Error& e) {
        outcome.code = exit_code_for(e);
        j["error"] = e.what();
        text << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        outcome.code = kExitNumericalFailure;
        j["error"] = e.what();
        text << "error: " << e.what() << "\n";
    }
    outcome.report = std::move(j);
    outcome.human = text.str();
    return outcome;
}

int cmd_classify(const std::vector<std::string>& files, const Options& opt, bool with_trace,
                 unsigned jobs, std::ostream& out) {
    std::vector<FileOutcome> outcomes(files.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i)
            outcomes[i] = classify_one(files[i], opt, with_trace);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < files.size(); i = next++)
                    outcomes[i] = classify_one(files[i], opt, with_trace);
            });
        }
        for (std::thread& t : pool)
            t.join();
    }

    int code = kExitOk;
    if (opt.as_json) {
        if (outcomes.size() == 1) {
            out << outcomes.front().report.dump(2) << "\n";
        } else {
            json all = json::array();
            for (FileOutcome& o : outcomes)
                all.push_back(std::move(o.report));
            out << all.dump(2) << "\n";
        }
    } else {
        for (std::size_t i = 0; i < outcomes.size(); ++i)
            out << (i ? "\n" : "") << outcomes[i].human;
    }
    for (const FileOutcome& o : outcomes)
        code = std::max(code, o.code);
    return code;
}

int cmd_minimize(const std::string& file, const std::string& out_path, const Options& opt,
                 std::ostream& out) {
    const MatrixDocument doc = read_document(file);
    const PptCovariance g = make_ppt_covariance(doc.gamma, doc.shape(), opt.tol);
    MinimizeResult result = minimize_ppt(g, opt.tol);

    MatrixDocument out_doc;
    out_doc.f_a = doc.f_a;
    out_doc.f_b = doc.f_b;
    out_doc.gamma = result.minimal.gamma;
    out_doc.meta = doc.meta;
    out_doc.meta["minimized_from"] = file;
    out_doc.meta["descent_steps"] = std::to_string(result.trace.size());
    write_document(out_doc, out_path);

    if (opt.as_json) {
        json j = report_shell("minimize", opt);
        j["file"] = file;
        j["output"] = out_path;
        j["steps"] = result.trace.size();
        j["trace"] = trace_json(result.trace);
        j["block_diagonal"] =
            is_block_diagonal(result.minimal.gamma, result.minimal.shape, opt.tol);
        out << j.dump(2) << "\n";
    } else {
        out << "file: " << file << "\n"
            << "descent steps: " << result.trace.size() << "\n";
        print_trace(out, result.trace);
        out << "block diagonal endpoint: "
            << (is_block_diagonal(result.minimal.gamma, result.minimal.shape, opt.tol)
                    ? "yes"
                    : "no")
            << "\n"
            << "output written: " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_generate(double a, double b, double c, double e, double f,
                 const std::string& out_path, const Options& opt, std::ostream& out) {
    const FamilyParams params(a, b, c, e, f);
    const RealMatrix gamma = build_gamma(params, opt.tol);

    MatrixDocument doc;
    doc.f_a = 2;
    doc.f_b = 2;
    doc.gamma = gamma;
    doc.meta["generator"] = "family";
    doc.meta["a"] = fmt(a);
    doc.meta["b"] = fmt(b);
    doc.meta["c"] = fmt(c);
    doc.meta["e"] = fmt(e);
    doc.meta["f"] = fmt(f);
    doc.meta["d"] = fmt(params.d());
    write_document(doc, out_path);

    if (opt.as_json) {
        json j = report_shell("generate", opt);
        j["params"] = {{"a", a}, {"b", b}, {"c", c}, {"e", e}, {"f", f}, {"d", params.d()}};
        j["output"] = out_path;
        out << j.dump(2) << "\n";
    } else {
        out << "generated 8x8 covariance for modes (2, 2)\n"
            << "derived d: " << std::setprecision(12) << params.d() << "\n"
            << "output written: " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement analysis of bipartite Gaussian states from covariance matrices"};
    app.name(std::string(kToolName));
    app.fallthrough();

    Options opt;
    app.add_option("--rtol", opt.tol.rtol, "Relative slack for positive semidefinite checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--ntol", opt.tol.ntol, "Relative cutoff for null space membership")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--btol", opt.tol.btol, "Relative cutoff for off-diagonal block norms")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--json", opt.as_json, "Emit machine-readable JSON reports");
    app.require_subcommand(1);

    std::string in_file;
    std::vector<std::string> classify_files;
    std::string out_path;
    bool with_trace = false;
    unsigned jobs = 1;
    double pa = 0, pb = 0, pc = 0, pe = 0, pf = 0;

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Check that a covariance matrix is a valid state");
    validate_cmd->add_option("file", in_file, "Input document")->required();

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Decide the entanglement class of one or more states");
    classify_cmd->add_option("files", classify_files, "Input documents")->required();
    classify_cmd->add_flag("--trace", with_trace, "Include the full subtraction trace");
    classify_cmd->add_option("--jobs", jobs, "Number of parallel workers")
        ->check(CLI::PositiveNumber);

    CLI::App* minimize_cmd =
        app.add_subcommand("minimize", "Descend to a minimally ppt covariance");
    minimize_cmd->add_option("file", in_file, "Input document")->required();
    minimize_cmd->add_option("-o,--output", out_path, "Output document")->required();

    CLI::App* generate_cmd =
        app.add_subcommand("generate", "Build a family covariance from five parameters");
    generate_cmd->add_option("a", pa, "Parameter a")->required();
    generate_cmd->add_option("b", pb, "Parameter b")->required();
    generate_cmd->add_option("c", pc, "Parameter c")->required();
    generate_cmd->add_option("e", pe, "Parameter e")->required();
    generate_cmd->add_option("f", pf, "Parameter f")->required();
    generate_cmd->add_option("-o,--output", out_path, "Output document")->required();

    CLI::App* eig_cmd =
        app.add_subcommand("eig", "Print the spectra of gamma + i*sigma and its twin");
    eig_cmd->add_option("file", in_file, "Input document")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(in_file, opt, out);
        if (classify_cmd->parsed())
            return cmd_classify(classify_files, opt, with_trace, jobs, out);
        if (minimize_cmd->parsed())
            return cmd_minimize(in_file, out_path, opt, out);
        if (generate_cmd->parsed())
            return cmd_generate(pa, pb, pc, pe, pf, out_path, opt, out);
        if (eig_cmd->parsed())
            return cmd_eig(in_file, opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    err << "error: no command given\n";
    return kExitInputError;
}

}  // namespace covsep

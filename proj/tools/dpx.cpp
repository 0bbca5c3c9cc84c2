// dpx: construct and verify double Poisson extensions, compute semiclassical
// limits of parametrized presentations, evaluate deformations, and decide the
// iterated-extension criteria.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dpx/docfile.hpp"

namespace {

using namespace dpx;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitError = 2;

std::size_t configured_overlap_len() {
    if (const char* env = std::getenv("DPX_MAX_OVERLAP_LEN")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 3 && v <= 16) return static_cast<std::size_t>(v);
    }
    return 4;
}

const DEData<Rational>& need_dedata(const Document& doc) {
    if (doc.kind != Document::Kind::DEData)
        throw DomainError("this command needs a [dedata] document");
    return *doc.dedata;
}

const ParamFamily& need_family(const Document& doc) {
    if (doc.kind != Document::Kind::Family)
        throw DomainError("this command needs a [family] document");
    return *doc.family;
}

std::string join_conditions(const std::vector<int>& conditions) {
    std::string out;
    for (int c : conditions) {
        if (!out.empty()) out += ",";
        out += std::to_string(c);
    }
    return out;
}

int cmd_check(const std::string& file, bool report_mode) {
    const Document doc = load_document(file);
    const auto& d = need_dedata(doc);
    CheckReport<Rational> report = check_dedata(d);
    bool jacobi_pass = false;
    std::string jacobi_text;
    if (report.pass()) {
        auto ext = build_extension_unchecked(d);
        auto jr = jacobi_check(ext.structure);
        jacobi_pass = jr.pass();
        jacobi_text = jr.str();
    }
    if (report_mode) {
        std::cout << "command: check\n";
        std::cout << "check.pass: " << (report.pass() ? "true" : "false") << "\n";
        if (!report.pass())
            std::cout << "check.failed_conditions: " << join_conditions(report.failed_conditions())
                      << "\n";
        else
            std::cout << "jacobi.pass: " << (jacobi_pass ? "true" : "false") << "\n";
    } else {
        std::cout << "check: " << report.str() << "\n";
        if (report.pass()) std::cout << "extension " << jacobi_text << "\n";
    }
    return report.pass() && jacobi_pass ? kExitPass : kExitMathFail;
}

int cmd_limit(const std::string& file, bool report_mode) {
    const Document doc = load_document(file);
    const auto& fam = need_family(doc);
    FamilyReport validation = validate_family(fam);
    if (!validation.pass()) {
        std::cout << validation.str();
        return kExitMathFail;
    }
    LimitResult limit = semiclassical_limit(fam);
    if (report_mode) {
        std::cout << "command: limit\n";
        std::cout << "family.valid: true\n";
        std::cout << "dedata.check.pass: " << (limit.check.pass() ? "true" : "false") << "\n";
        if (!limit.check.pass())
            std::cout << "dedata.check.failed_conditions: "
                      << join_conditions(limit.check.failed_conditions()) << "\n";
    }
    std::cout << document_for_dedata(limit.dedata);
    if (!limit.check.pass()) {
        std::cout << "\n# the limit data fails the extension conditions:\n";
        std::istringstream lines(limit.check.str());
        std::string line;
        while (std::getline(lines, line)) std::cout << "# " << line << "\n";
        return kExitMathFail;
    }
    return kExitPass;
}

int cmd_deform(const std::string& file, const std::string& lambda_text, bool report_mode) {
    const Document doc = load_document(file);
    const auto& fam = need_family(doc);
    const Rational lambda = parse_scalar<Rational>(lambda_text, make_ring({}));
    NCPresentation<Rational> res = deform(fam, lambda);
    if (report_mode) std::cout << "command: deform\nlambda: " << to_string(lambda) << "\n";
    std::cout << document_for_presentation<Rational>(res);
    return kExitPass;
}

int cmd_crosscheck(const std::string& file, bool report_mode) {
    const Document doc = load_document(file);
    const auto& fam = need_family(doc);
    FamilyReport validation = validate_family(fam);
    if (!validation.pass()) {
        std::cout << validation.str();
        return kExitMathFail;
    }
    ConfluenceReport conf = confluence_check(fam.pres, configured_overlap_len());
    CrosscheckReport report = crosscheck_limit(fam);
    if (report_mode) {
        std::cout << "command: crosscheck\n";
        std::cout << "confluence.resolved: " << (conf.resolved() ? "true" : "false") << "\n";
        std::cout << "crosscheck.pass: " << (report.pass() ? "true" : "false") << "\n";
        std::cout << "crosscheck.pairs: " << report.pairs_checked << "\n";
        std::cout << "dedata.check.pass: " << (report.dedata_check.pass() ? "true" : "false")
                  << "\n";
    } else {
        if (!conf.resolved())
            std::cout << "warning: presentation is not confluent at length "
                      << conf.max_len << "; the normal-form basis is not free\n";
        std::cout << report.str() << "\n";
    }
    return report.pass() ? kExitPass : kExitMathFail;
}

int cmd_detect(const std::string& file, bool report_mode) {
    const Document doc = load_document(file);
    const auto& d = need_dedata(doc);
    IteratedDetection<Rational> det = detect_iterated(d);
    const auto kind = det.kind;
    if (report_mode) {
        std::cout << "command: detect\n";
        std::cout << "detect.kind: "
                  << (kind == IteratedDetection<Rational>::Kind::Form1
                          ? "form1"
                          : kind == IteratedDetection<Rational>::Kind::Form2 ? "form2"
                                                                             : "criterion-fails")
                  << "\n";
        return kExitPass;
    }
    if (kind == IteratedDetection<Rational>::Kind::CriterionFails) {
        std::string msg = "criterion fails:";
        if (det.alpha12_witness)
            msg += " alpha12(" + d.ring->gen_name(*det.alpha12_witness) + ") = " +
                   d.alpha[0][1].image(*det.alpha12_witness).str();
        if (det.alpha21_witness)
            msg += std::string(det.alpha12_witness ? "," : "") + " alpha21(" +
                   d.ring->gen_name(*det.alpha21_witness) + ") = " +
                   d.alpha[1][0].image(*det.alpha21_witness).str();
        if (det.q11_nonzero) msg += ", q11 = " + to_string(d.q11) + " != 0";
        std::cout << msg << "\n";
        std::cout << "note: the criterion decides presentability in the given variables y1, y2 "
                     "only; other variable choices are not searched.\n";
        return kExitPass;
    }
    const bool form1 = kind == IteratedDetection<Rational>::Kind::Form1;
    const std::string inner_var = form1 ? "y1" : "y2";
    const std::string outer_var = form1 ? "y2" : "y1";
    std::cout << (form1 ? "form 1" : "form 2") << ": R[" << inner_var << "; beta1, nu1]["
              << outer_var << "; beta, mu]\n";
    for (std::size_t g = 0; g < d.ring->arity(); ++g) {
        std::cout << "beta1(" << d.ring->gen_name(g) << ") = " << det.inner.beta.image(g).str()
                  << ", nu1(" << d.ring->gen_name(g) << ") = " << det.inner.nu.image(g).str()
                  << "\n";
    }
    for (std::size_t g = 0; g < det.inter_ring->arity(); ++g) {
        std::cout << "beta(" << det.inter_ring->gen_name(g) << ") = " << det.beta.image(g).str()
                  << ", mu(" << det.inter_ring->gen_name(g) << ") = " << det.mu.image(g).str()
                  << "\n";
    }
    return kExitPass;
}

int cmd_normalize(const std::string& file, bool report_mode) {
    const Document doc = load_document(file);
    const auto& d = need_dedata(doc);
    CheckReport<Rational> before = check_dedata(d);
    if (!before.pass()) {
        std::cout << "input DE-data fails: " << before.str();
        return kExitMathFail;
    }
    auto [out, m] = normalize_dedata(d);
    if (report_mode) std::cout << "command: normalize\n";
    std::cout << "# basis change (z1, z2)^T = M (y1, y2)^T with M = [[" << to_string(m[0][0])
              << ", " << to_string(m[0][1]) << "], [" << to_string(m[1][0]) << ", "
              << to_string(m[1][1]) << "]]\n\n";
    std::cout << document_for_dedata(out);
    return kExitPass;
}

template <ScalarField K>
int run_nf(const NCPresentation<K>& pres, const std::string& word_text) {
    auto shared = std::make_shared<NCPresentation<K>>(pres);
    Word w = parse_word(*shared, word_text);
    NCElement<K> nf = normal_form<K>(shared, w);
    std::cout << nf.str() << "\n";
    return kExitPass;
}

template <ScalarField K>
int run_confluence(const NCPresentation<K>& pres, std::size_t max_len) {
    auto shared = std::make_shared<NCPresentation<K>>(pres);
    ConfluenceReport report = confluence_check<K>(shared, max_len);
    std::cout << confluence_str(*shared, report);
    if (!report.resolved()) std::cout << "\n";
    return report.resolved() ? kExitPass : kExitMathFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpx: double Poisson extensions, semiclassical limits, deformations"};
    app.require_subcommand(1);
    bool report_mode = false;
    app.add_flag("--report", report_mode, "machine-readable key:value output");

    std::string file, word_text, lambda_text, points_text;
    std::size_t max_len = configured_overlap_len();

    auto* check = app.add_subcommand("check", "verify DE-data conditions and Jacobi");
    check->add_option("file", file)->required();
    auto* limit = app.add_subcommand("limit", "semiclassical limit of a family");
    limit->add_option("file", file)->required();
    auto* deform_cmd = app.add_subcommand("deform", "evaluate a family at lambda");
    deform_cmd->add_option("file", file)->required();
    deform_cmd->add_option("--lambda", lambda_text)->required();
    auto* crosscheck = app.add_subcommand("crosscheck", "commutator route vs DE-data route");
    crosscheck->add_option("file", file)->required();
    auto* detect = app.add_subcommand("detect", "iterated-extension criterion");
    detect->add_option("file", file)->required();
    auto* normalize = app.add_subcommand("normalize", "normalize q by a basis change");
    normalize->add_option("file", file)->required();
    auto* nf = app.add_subcommand("nf", "normal form of a word");
    nf->add_option("file", file)->required();
    nf->add_option("--word", word_text)->required();
    auto* confluence = app.add_subcommand("confluence", "overlap resolution up to a length");
    confluence->add_option("file", file)->required();
    confluence->add_option("--max-len", max_len);
    auto* interp = app.add_subcommand("interp", "Lagrange interpolation through node:value pairs");
    interp->add_option("--points", points_text)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(file, report_mode);
        if (limit->parsed()) return cmd_limit(file, report_mode);
        if (deform_cmd->parsed()) return cmd_deform(file, lambda_text, report_mode);
        if (crosscheck->parsed()) return cmd_crosscheck(file, report_mode);
        if (detect->parsed()) return cmd_detect(file, report_mode);
        if (normalize->parsed()) return cmd_normalize(file, report_mode);
        if (nf->parsed() || confluence->parsed()) {
            const Document doc = load_document(file);
            if (doc.kind == Document::Kind::Presentation) {
                if (nf->parsed()) return run_nf<dpx::Rational>(*doc.presentation, word_text);
                return run_confluence<dpx::Rational>(*doc.presentation, max_len);
            }
            if (doc.kind == Document::Kind::Family) {
                if (nf->parsed()) return run_nf<dpx::RatFunc>(*doc.family->pres, word_text);
                return run_confluence<dpx::RatFunc>(*doc.family->pres, max_len);
            }
            throw dpx::DomainError("this command needs a [presentation] or [family] document");
        }
        if (interp->parsed()) {
            std::vector<std::pair<dpx::Rational, dpx::Rational>> pts;
            for (const auto& part : dpx::docdetail::split(points_text, ',')) {
                auto nv = dpx::docdetail::split(part, ':');
                if (nv.size() != 2)
                    throw dpx::DomainError("points must be 'node:value,node:value,...'");
                pts.emplace_back(dpx::parse_scalar<dpx::Rational>(nv[0], dpx::make_ring({})),
                                 dpx::parse_scalar<dpx::Rational>(nv[1], dpx::make_ring({})));
            }
            dpx::RatFunc f = dpx::lagrange_interpolate(pts);
            std::cout << f.str() << "\n";
            return kExitPass;
        }
    } catch (const dpx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

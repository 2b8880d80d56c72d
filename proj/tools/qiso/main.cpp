#include "commands.hpp"

using namespace qiso;
using namespace qiso::tool;

namespace {

void add_rep_flags(CLI::App& app, RepOptions& ro, const std::string& prefix)
{
    app.add_option("--" + prefix + "family", ro.family, "classical | nonclassical | onedim")
        ->check(CLI::IsMember({"classical", "nonclassical", "onedim"}));
    app.add_option("--" + prefix + "r", ro.r, "parameter r");
    app.add_option("--" + prefix + "s", ro.s, "parameter s");
    app.add_option("--" + prefix + "c", ro.c, "one-dimensional value (I or K)");
    app.add_option("--" + prefix + "epsilon", ro.epsilon, "sign eps");
    app.add_option("--" + prefix + "epsilon2", ro.epsilon2, "sign eps2");
}

int report_error(const std::string& kind, const std::string& what)
{
    std::cerr << "qiso: " << kind << ": " << what << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations in U_q(iso2) and the localized U_q(m2)"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--algebra", o.algebra, "iso2 | m2")->check(CLI::IsMember({"iso2", "m2"}));
    app.add_option("--mode", o.mode, "exact | numeric")->check(CLI::IsMember({"exact", "numeric"}));
    app.add_option("--q", o.q, "numeric q (numeric mode)");
    app.add_option("--window", o.window, "basis window lo:hi");
    app.add_option("--format", o.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--tol", o.tol, "numeric tolerance");
    add_rep_flags(app, o.rep, "");
    app.add_option("--size", o.size, "nonclassical basis size / decomposition block size");
    app.add_option("--steps", o.steps, "reconstruction depth");
    app.add_option("--m", o.m, "degenerate index m (s = eps i q^(m+1/2))");
    app.add_option("--k", o.g_index, "index of G[k] in matrix output");
    app.add_option("--max-length", o.max_length, "word length cap for rewriting");
    app.add_option("--gen", o.generator, "single generator for matrix output");
    app.add_flag("--show-matrix", o.show_matrix, "include matrices in reports");

    std::string expr_text;
    bool cross_check = false;
    auto* nf = app.add_subcommand("nf", "normal form of an element");
    nf->add_option("expr", expr_text)->required();
    nf->add_flag("--cross-check", cross_check, "compare rewriting with direct multiplication");

    std::vector<std::string> rules;
    auto* conf = app.add_subcommand("confluence", "overlap check of the rewrite systems");
    conf->add_option("--rule", rules, "replacement iso2 rule 'X Y -> rhs'");

    auto* psi_cmd = app.add_subcommand("psi", "image of an iso2 element in the localized m2");
    psi_cmd->add_option("expr", expr_text)->required();

    std::string which = "all";
    auto* verify = app.add_subcommand("verify", "machine checks of the identities");
    verify->add_option("check", which)->check(CLI::IsMember({"relations", "psi", "casimir", "decompose", "reconstruct", "all"}));

    std::string rep_what;
    auto* rep = app.add_subcommand("rep", "representation matrices and their structure");
    rep->add_option("what", rep_what)
        ->required()
        ->check(CLI::IsMember({"matrix", "spectrum", "casimir", "decompose", "reconstruct"}));

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of R(I) on a window");
    auto* classify = app.add_subcommand("classify", "class of the parameters");
    auto* equiv = app.add_subcommand("equiv", "equivalence decision for two parameter sets");
    add_rep_flags(*equiv, o.other, "other-");
    auto* canon = app.add_subcommand("canon", "canonical representative");
    double residual_tol = 1e-8;
    auto* intertwine = app.add_subcommand("intertwine", "numeric intertwiner search");
    add_rep_flags(*intertwine, o.other, "other-");
    intertwine->add_option("--residual-tol", residual_tol, "null-space tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    o.algebra_given = app.count("--algebra") > 0;
    o.window_given = app.count("--window") > 0;
    o.format_given = app.count("--format") > 0;

    try {
        if (*nf)
            return cmd_nf(o, expr_text, cross_check);
        if (*conf)
            return cmd_confluence(o, rules);
        if (*psi_cmd)
            return cmd_psi(o, expr_text);
        if (*verify)
            return cmd_verify(o, which);
        if (*rep) {
            if (rep_what == "reconstruct")
                return rep_reconstruct(o);
            return with_field(o, [&](const auto& f) {
                if (rep_what == "matrix")
                    return rep_matrix(o, f);
                if (rep_what == "spectrum")
                    return rep_spectrum(o, f);
                if (rep_what == "casimir")
                    return rep_casimir(o, f);
                return rep_decompose(o, f);
            });
        }
        if (*spectrum)
            return with_field(o, [&](const auto& f) { return rep_spectrum(o, f); });
        if (*classify)
            return with_field(o, [&](const auto& f) { return cmd_classify(o, f); });
        if (*equiv)
            return with_field(o, [&](const auto& f) { return cmd_equiv(o, f); });
        if (*canon)
            return with_field(o, [&](const auto& f) { return cmd_canon(o, f); });
        if (*intertwine)
            return cmd_intertwine(o, residual_tol);
    } catch (const ParseError& e) {
        return report_error("parse error", e.what());
    } catch (const WindowPole& e) {
        std::string idx;
        for (int m : e.indices)
            idx += " " + std::to_string(m);
        return report_error("pole", std::string(e.what()) + " (indices" + idx + ")");
    } catch (const NonExtendable& e) {
        return report_error("not extendable", std::string(e.what()) + " (n = " + std::to_string(e.offending_n) + ")");
    } catch (const EvaluationPole& e) {
        return report_error("evaluation pole", std::string(e.what()) + " (factor " + e.offending_factor + ")");
    } catch (const ResourceLimit& e) {
        return report_error("resource limit", e.what());
    } catch (const std::exception& e) {
        return report_error("error", e.what());
    }
    return 2;
}

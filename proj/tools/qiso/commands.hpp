#pragma once

#include <random>

#include "qiso/repmod/reconstruct.hpp"
#include "qiso/repmod/structure.hpp"
#include "support.hpp"

namespace qiso::tool {

// ---------------------------------------------------------------------------
// Algebra commands

inline int cmd_nf(const Options& o, const std::string& text, bool cross_check)
{
    ExprPtr e = o.algebra_given ? parse_expression(text, o.algebra_value()) : parse_any(text);
    json out{{"input", text}};
    bool agree = true;
    if (!e->has_generator()) {
        out["algebra"] = "scalar";
        out["normal_form"] = eval_scalar(*e).str();
    } else {
        bool m2 = (o.algebra_given ? o.algebra_value() : *expression_algebra(*e)) == Algebra::M2;
        out["algebra"] = m2 ? "m2" : "iso2";
        if (m2) {
            M2Element x = evaluate_m2(*e, o.max_length);
            out["normal_form"] = format_element(x);
            if (cross_check)
                agree = multiply_out_m2(*e, o.max_length) == x;
        } else {
            Iso2Element x = evaluate_iso2(*e, o.max_length);
            out["normal_form"] = format_element(x);
            if (cross_check)
                agree = multiply_out_iso2(*e, o.max_length) == x;
        }
        if (cross_check)
            out["cross_check"] = agree ? "agree" : "disagree";
    }
    if (o.format == "text" && !cross_check)
        std::cout << out["normal_form"].get<std::string>() << "\n";
    else
        emit(out, o);
    return agree ? 0 : 1;
}

struct ConfluenceReport {
    std::string system;
    std::vector<Overlap> unresolved;
};

inline ConfluenceReport iso2_confluence(const std::string& name, std::vector<Iso2RewriteRule> rules, std::size_t cap)
{
    auto sys = iso2_system(std::move(rules), cap);
    return {name, sys.check_confluence<Iso2Element>(iso2_alphabet(), iso2_from_words,
                                                    [](const Iso2Element& x) { return format_element(x); })};
}

inline ConfluenceReport m2_confluence(std::size_t cap)
{
    auto sys = m2_system(cap);
    return {"m2", sys.check_confluence<M2Element>(m2_overlap_sample(), m2_from_words,
                                                  [](const M2Element& x) { return format_element(x); })};
}

inline json confluence_json(const ConfluenceReport& r)
{
    json bad = json::array();
    for (const auto& ov : r.unresolved)
        bad.push_back({{"word", ov.word}, {"via_left", ov.via_left}, {"via_right", ov.via_right}});
    return {{"system", r.system}, {"unresolved", r.unresolved.size()}, {"overlaps", bad}};
}

/// Without user rules: both systems must be confluent and the broken variant must not be.
inline int cmd_confluence(const Options& o, const std::vector<std::string>& rule_texts)
{
    json out = json::array();
    bool pass = true;
    if (!rule_texts.empty()) {
        auto rules = iso2_rules();
        for (const auto& text : rule_texts) {
            Iso2RewriteRule user = parse_iso2_rule(text);
            std::erase_if(rules, [&](const Iso2RewriteRule& r) { return r.text.substr(0, 5) == user.text.substr(0, 5); });
            rules.push_back(user);
        }
        auto rep = iso2_confluence("iso2-user", rules, o.max_length);
        pass = rep.unresolved.empty();
        out.push_back(confluence_json(rep));
    } else {
        auto a = iso2_confluence("iso2", iso2_rules(), o.max_length);
        auto b = m2_confluence(o.max_length);
        auto c = iso2_confluence("iso2-broken", iso2_rules_broken(), o.max_length);
        pass = a.unresolved.empty() && b.unresolved.empty() && !c.unresolved.empty();
        for (const auto* r : {&a, &b, &c})
            out.push_back(confluence_json(*r));
    }
    emit(out, o);
    return pass ? 0 : 1;
}

inline int cmd_psi(const Options& o, const std::string& text)
{
    ExprPtr e = parse_expression(text, Algebra::Iso2);
    Iso2Element x = evaluate_iso2(*e, o.max_length);
    json out{{"input", text}, {"binding", psi().binding}, {"image", format_element(psi_apply(x))}};
    if (o.format == "text")
        std::cout << out["image"].get<std::string>() << "\n";
    else
        emit(out, o);
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckRow {
    std::string check;
    bool pass;
    std::string witness;
};

inline Iso2Element iso2_text(const std::string& text) { return evaluate_iso2(*parse_expression(text, Algebra::Iso2)); }

inline std::vector<CheckRow> verify_relations(const Options& o, const Field<Scalar>& f)
{
    std::vector<CheckRow> rows;
    const std::string t1p = "(q^(-1/2) I T2 - q^(1/2) T2 I)";
    Iso2Element casimir =
        iso2_text("(1/2) (T1 " + t1p + " + " + t1p + " T1) + (1/2) (q + q^-1) T2^2");
    rows.push_back({"pbw-casimir", casimir == casimir_pbw(), format_element(casimir)});
    Iso2Element serre4 = iso2_text("I^2 T2 - (q + q^-1) I T2 I + T2 I^2");
    rows.push_back({"serre-4", serre4 == -iso2_gen(Iso2Gen::T2), format_element(serre4)});
    Iso2Element serre5 = iso2_text("I T2^2 - (q + q^-1) T2 I T2 + T2^2 I");
    rows.push_back({"serre-5", serre5.is_zero(), format_element(serre5)});
    for (Iso2Gen g : iso2_alphabet()) {
        Iso2Element x = iso2_gen(g), comm = casimir_pbw() * x - x * casimir_pbw();
        rows.push_back({std::string("centrality-") + gen_name(g), comm.is_zero(), format_element(comm)});
    }
    auto a = iso2_confluence("iso2", iso2_rules(), o.max_length);
    auto b = m2_confluence(o.max_length);
    auto c = iso2_confluence("iso2-broken", iso2_rules_broken(), o.max_length);
    rows.push_back({"confluence-iso2", a.unresolved.empty(), std::to_string(a.unresolved.size()) + " unresolved"});
    rows.push_back({"confluence-m2", b.unresolved.empty(), std::to_string(b.unresolved.size()) + " unresolved"});
    rows.push_back({"confluence-broken-detected", !c.unresolved.empty(),
                    std::to_string(c.unresolved.size()) + " unresolved" +
                        (c.unresolved.empty() ? "" : ", first at " + c.unresolved.front().word)});

    Window w = o.window_given ? o.window_value() : Window{-12, 12};
    Scalar r = f.value(o.rep.r, "--r"), s = f.value(o.rep.s, "--s");
    auto d = iso2_relation_defects(classical_matrices(r, s, f.ctx, w), f.ctx);
    rows.push_back({"rep-iso2-relations", d.holds(), "classical window " + w.str() + ", exact " + d.rel1.exact().str()});
    bool nc = true;
    for (int eps : {1, -1})
        for (int eps2 : {1, -1})
            nc = nc && iso2_relation_defects(nonclassical_matrices(r, eps, eps2, f.ctx, 12), f.ctx).holds();
    rows.push_back({"rep-nonclassical-relations", nc, "all (eps, eps2), basis size 12"});
    std::string failed;
    for (const auto& def : m2_relation_defects(r, s, f.ctx, w))
        if (!def.op.is_zero())
            failed += (failed.empty() ? "" : "; ") + def.name;
    rows.push_back({"rep-m2-relations", failed.empty(), failed.empty() ? "window " + w.str() : failed});
    return rows;
}

inline Iso2Element random_iso2(std::mt19937& rng, int max_degree)
{
    const std::vector<Scalar> pool{Scalar(1), Scalar(-2), Scalar::t(), Scalar::q(-1), Scalar::i(),
                                   Scalar::rational(1, 3)};
    std::uniform_int_distribution<int> deg(0, max_degree), pick(0, static_cast<int>(pool.size()) - 1), count(1, 3);
    Iso2Element x;
    for (int n = count(rng); n > 0; --n) {
        int total = deg(rng);
        std::uniform_int_distribution<int> split(0, total);
        int j = split(rng);
        int k = std::uniform_int_distribution<int>(0, total - j)(rng);
        x += Iso2Element::monomial({j, k, total - j - k}, pool[pick(rng)]);
    }
    return x;
}

inline std::vector<CheckRow> verify_psi(const Options& o, const Field<Scalar>& f)
{
    std::vector<CheckRow> rows;
    const auto& p = psi();
    auto defects = psi_relation_defects(p.image_I, p.image_T1, p.image_T2);
    for (std::size_t k = 0; k < defects.size(); ++k)
        rows.push_back({"psi-relation-" + std::to_string(k + 1), defects[k].holds(),
                        defects[k].name + " -> " + format_element(defects[k].defect)});
    std::mt19937 rng(2024);
    int bad = 0;
    const int pairs = 20;
    for (int n = 0; n < pairs; ++n) {
        Iso2Element x = random_iso2(rng, 2), y = random_iso2(rng, 2);
        bad += psi_apply(x * y) != psi_apply(x) * psi_apply(y);
    }
    rows.push_back({"psi-homomorphism", bad == 0,
                    std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " random pairs, binding " + p.binding});
    Window w = o.window_given ? o.window_value() : Window{-8, 8};
    Scalar r = f.value(o.rep.r, "--r"), s = f.value(o.rep.s, "--s");
    bool fact = true;
    for (const auto& d : psi_factorization_defects(r, s, f.ctx, w))
        fact = fact && d.is_zero();
    rows.push_back({"psi-factorization", fact, "R_rs = gauge * pi_(ir,s) o psi on window " + w.str()});
    return rows;
}

inline std::vector<CheckRow> verify_casimir(const Options& o, const Field<Scalar>& f)
{
    std::vector<CheckRow> rows;
    Scalar r = f.value(o.rep.r, "--r"), s = f.value(o.rep.s, "--s");
    Window w = o.window_given ? o.window_value() : Window{-6, 6};
    auto a = casimir_of(classical_matrices(r, s, f.ctx, w), f.ctx);
    auto b = casimir_of(classical_matrices(r, s, f.ctx, Window{w.lo + 3, w.hi + 5}), f.ctx);
    bool classical = a.scalar && b.scalar && *a.scalar == *b.scalar;
    rows.push_back({"casimir-classical", classical, a.scalar ? "C = " + a.scalar->str() : "not scalar"});
    bool nc = true;
    std::string value;
    for (int eps : {1, -1})
        for (int eps2 : {1, -1}) {
            auto c = casimir_of(nonclassical_matrices(r, eps, eps2, f.ctx, 8), f.ctx);
            nc = nc && c.scalar && (!a.scalar || *c.scalar == *a.scalar);
            if (c.scalar)
                value = c.scalar->str();
        }
    rows.push_back({"casimir-nonclassical", nc, value.empty() ? "not scalar" : "C = " + value});
    return rows;
}

inline std::vector<CheckRow> verify_decompose(const Options& o, const Field<Scalar>& f)
{
    std::vector<CheckRow> rows;
    Scalar r = f.value(o.rep.r, "--r");
    int eps = sign_flag(o.rep.epsilon, "--epsilon");
    int n = o.size > 0 ? o.size : 6;
    Window w = o.window_given ? o.window_value() : Window{-o.m - n, -o.m + n - 1};
    auto split = decompose_degenerate(r, o.m, eps, f.ctx, w);
    bool off = true, blocks = true;
    for (Iso2Gen g : iso2_alphabet()) {
        off = off && split.block(g, 1, -1).is_zero() && split.block(g, -1, 1).is_zero();
        for (int eps2 : {1, -1})
            blocks = blocks && (split.block(g, eps2, eps2) - nonclassical_matrix(g, r, eps, eps2, f.ctx, split.size)).is_zero();
    }
    std::string where = "s = " + split.s.str() + ", window " + w.str();
    rows.push_back({"decompose-offdiagonal-zero", off, where});
    rows.push_back({"decompose-blocks-nonclassical", blocks, where + ", block size " + std::to_string(split.size)});
    return rows;
}

inline std::vector<CheckRow> verify_reconstruct(const Options& o, const Field<Scalar>& f)
{
    std::vector<CheckRow> rows;
    Scalar r = f.value(o.rep.r, "--r"), s = f.value(o.rep.s, "--s");
    auto rec = reconstruct_from_seed(r, s, o.steps);
    std::map<std::string, std::vector<int>> failures;
    std::vector<std::string> order;
    for (const auto& c : rec.checks) {
        if (!failures.count(c.name))
            order.push_back(c.name);
        auto& list = failures[c.name];
        if (!c.holds)
            list.push_back(c.index);
    }
    for (const auto& name : order) {
        const auto& list = failures[name];
        std::string w = list.empty() ? "all indices" : "fails at";
        for (int j : list)
            w += " " + std::to_string(j);
        rows.push_back({"reconstruct-" + name, list.empty(), w});
    }
    rows.push_back({"reconstruct-nondegenerate", !rec.degenerate_at.has_value(),
                    rec.degenerate_at ? "ladder denominator vanishes at j = " + std::to_string(*rec.degenerate_at)
                                      : "steps " + std::to_string(o.steps)});
    rows.push_back({"reconstruct-matches-classical", rec.matches_classical,
                    "after rescaling; printed iT1 |j-1> coefficient differs at " +
                        std::to_string(rec.printed_t1_mismatch.size()) + " indices"});
    return rows;
}

inline int cmd_verify(const Options& o, const std::string& which)
{
    Field<Scalar> f = exact_field();
    std::vector<CheckRow> rows;
    auto add = [&](std::vector<CheckRow> more) { rows.insert(rows.end(), more.begin(), more.end()); };
    if (which == "relations" || which == "all")
        add(verify_relations(o, f));
    if (which == "psi" || which == "all")
        add(verify_psi(o, f));
    if (which == "casimir" || which == "all")
        add(verify_casimir(o, f));
    if (which == "decompose" || which == "all")
        add(verify_decompose(o, f));
    if (which == "reconstruct" || which == "all")
        add(verify_reconstruct(o, f));
    bool pass = true;
    json out = json::array();
    for (const auto& row : rows) {
        pass = pass && row.pass;
        out.push_back({{"check", row.check}, {"status", row.pass ? "pass" : "fail"}, {"witness", row.witness}});
    }
    if (o.format == "text" && o.format_given) {
        for (const auto& row : rows)
            std::cout << (row.pass ? "PASS  " : "FAIL  ") << row.check << "  " << row.witness << "\n";
    } else {
        Options as_json = o;
        if (!o.format_given)
            as_json.format = "json";
        emit(out, as_json);
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// rep and analysis

template <class F>
int rep_matrix(const Options& o, const Field<F>& f)
{
    auto p = build_params(o.rep, o.algebra_value(), f);
    auto gens = rep_generators(p, o, f.ctx);
    if (o.format == "csv") {
        if constexpr (std::is_same_v<F, Scalar>) {
            throw UsageError("--format csv needs --mode numeric");
        } else {
            std::cout << "generator,row,col,re,im\n";
            std::cout.precision(17);
            for (const auto& [name, op] : gens)
                for (const auto& [row, col, v] : op.entries())
                    std::cout << name << "," << row << "," << col << "," << v.real() << "," << v.imag() << "\n";
        }
        return 0;
    }
    json out = json::array();
    for (const auto& [name, op] : gens)
        out.push_back(matrix_json(p, name, op));
    if (o.format == "json") {
        std::cout << (out.size() == 1 ? out.front() : out).dump(2) << "\n";
    } else {
        for (const auto& [name, op] : gens) {
            std::cout << name << " on " << op.domain().str() << " (" << params_str(p) << ")\n";
            for (const auto& [row, col, v] : op.entries())
                std::cout << "  [" << row << ", " << col << "] " << text_value(value_json(v)) << "\n";
        }
    }
    return 0;
}

template <class F>
int rep_spectrum(const Options& o, const Field<F>& f)
{
    auto p = build_params(o.rep, o.algebra_value(), f);
    Window w = o.window_value();
    auto sp = spectrum_I(p, w, f.ctx);
    json eig = json::array();
    for (const auto& [m, v] : sp.eigenvalues)
        eig.push_back(json::array({m, value_json(v), sp.multiplicity.at(m)}));
    json pairs = json::array();
    for (const auto& [a, b] : sp.degenerate_pairs)
        pairs.push_back(json::array({a, b}));
    json out{{"params", params_str(p)},
             {"window", w.str()},
             {"eigenvalues", eig},
             {"simple", sp.simple()},
             {"max_multiplicity", sp.max_multiplicity()},
             {"degenerate_pairs", pairs},
             {"pair_sum", sp.pair_sum ? json(*sp.pair_sum) : json(nullptr)}};
    if (p.excluded)
        out["ladder_point"] = p.excluded->str();
    emit(out, o);
    return 0;
}

template <class F>
int rep_casimir(const Options& o, const Field<F>& f)
{
    auto p = build_params(o.rep, o.algebra_value(), f);
    auto c = casimir_of(iso2_matrices(p, o, f.ctx), f.ctx, std::is_same_v<F, Scalar> ? 0.0 : o.tol);
    json out{{"params", params_str(p)},
             {"exact_window", c.op.exact().str()},
             {"scalar", c.scalar ? value_json(*c.scalar) : json("not scalar")}};
    emit(out, o);
    return c.scalar ? 0 : 1;
}

template <class F>
int rep_decompose(const Options& o, const Field<F>& f)
{
    if (o.algebra_given && o.algebra_value() != Algebra::Iso2)
        throw UsageError("decompose applies to iso2");
    F r = f.value(o.rep.r, "--r");
    int eps = sign_flag(o.rep.epsilon, "--epsilon");
    int n = o.size > 0 ? o.size : 6;
    Window w = o.window_given ? o.window_value() : Window{-o.m - n, -o.m + n - 1};
    auto split = decompose_degenerate(r, o.m, eps, f.ctx, w);
    double tol = std::is_same_v<F, Scalar> ? 0.0 : o.tol;
    bool pass = true;
    json gens = json::array();
    for (Iso2Gen g : iso2_alphabet()) {
        double off = std::max(split.block(g, 1, -1).max_abs(), split.block(g, -1, 1).max_abs());
        bool off_zero = split.block(g, 1, -1).is_zero(tol) && split.block(g, -1, 1).is_zero(tol);
        json item{{"generator", gen_name(g)}, {"offdiagonal_zero", off_zero}};
        if constexpr (!std::is_same_v<F, Scalar>)
            item["offdiagonal_max"] = off;
        for (int eps2 : {1, -1}) {
            const auto& blk = split.block(g, eps2, eps2);
            bool match = (blk - nonclassical_matrix(g, r, eps, eps2, f.ctx, split.size)).is_zero(tol);
            item[eps2 > 0 ? "block_plus_matches" : "block_minus_matches"] = match;
            pass = pass && match;
            if (o.show_matrix)
                item[eps2 > 0 ? "block_plus" : "block_minus"] = matrix_json(nonclassical(r, eps, eps2), gen_name(g), blk);
        }
        pass = pass && off_zero;
        gens.push_back(item);
    }
    json out{{"s", value_json(split.s)},
             {"m", o.m},
             {"epsilon", eps},
             {"window", w.str()},
             {"block_size", split.size},
             {"generators", gens}};
    emit(out, o);
    return pass ? 0 : 1;
}

inline int rep_reconstruct(const Options& o)
{
    if (o.numeric())
        throw UsageError("reconstruct runs in exact mode only");
    Field<Scalar> f = exact_field();
    Scalar r = f.value(o.rep.r, "--r"), s = f.value(o.rep.s, "--s");
    auto rec = reconstruct_from_seed(r, s, o.steps);
    int failed = 0;
    for (const auto& c : rec.checks)
        failed += !c.holds;
    json t2 = json::object(), t1 = json::object(), rho = json::object();
    for (const auto& [j, a] : rec.t2_action)
        t2[std::to_string(j)] = {{"above", a.above.str()}, {"below", a.below.str()}};
    for (const auto& [j, a] : rec.t1_action)
        t1[std::to_string(j)] = {{"above", a.above.str()}, {"below", a.below.str()}};
    for (const auto& [j, v] : rec.rescaling)
        rho[std::to_string(j)] = v.str();
    json mismatch = json::array();
    for (int j : rec.printed_t1_mismatch)
        mismatch.push_back(j);
    json out{{"r", r.str()},
             {"s", s.str()},
             {"casimir", rec.casimir.str()},
             {"steps", rec.steps},
             {"checks", rec.checks.size()},
             {"failed_checks", failed},
             {"degenerate_at", rec.degenerate_at ? json(*rec.degenerate_at) : json(nullptr)},
             {"matches_classical", rec.matches_classical},
             {"printed_t1_mismatch", mismatch},
             {"T2_action", t2},
             {"T1_action", t1},
             {"rescaling", rho}};
    emit(out, o);
    return rec.all_hold() ? 0 : 1;
}

template <class F>
json label_json(const ClassLabel& l)
{
    json out{{"class", l.str()}};
    if (l.kind == ClassLabel::Kind::DegenerateReducible) {
        out["m"] = l.m;
        out["epsilon"] = l.eps;
    } else if (l.kind == ClassLabel::Kind::NotExtendable) {
        out["n"] = l.n;
    }
    return out;
}

template <class F>
int cmd_classify(const Options& o, const Field<F>& f)
{
    auto p = build_params(o.rep, o.algebra_value(), f);
    json out = label_json<F>(classify_params(p, f.ctx));
    out["params"] = params_str(p);
    emit(out, o);
    return 0;
}

template <class F>
int cmd_equiv(const Options& o, const Field<F>& f)
{
    auto a = build_params(o.rep, o.algebra_value(), f);
    auto b = build_params(o.other, o.algebra_value(), f, "other-");
    json out{{"a", params_str(a)}, {"b", params_str(b)}, {"equivalent", equivalent_params(a, b, f.ctx)}};
    emit(out, o);
    return 0;
}

template <class F>
int cmd_canon(const Options& o, const Field<F>& f)
{
    auto p = build_params(o.rep, o.algebra_value(), f);
    auto c = canonical_params(p, f.ctx);
    json out{{"input", params_str(p)}, {"canonical", params_str(c)}};
    if (c.excluded)
        out["ladder_point"] = c.excluded->str();
    emit(out, o);
    return 0;
}

inline int cmd_intertwine(const Options& o, double residual_tol)
{
    if (!o.numeric())
        throw UsageError("intertwine is numeric; pass --mode numeric");
    Field<Complex> f = numeric_field(o);
    auto a = build_params(o.rep, o.algebra_value(), f);
    auto b = build_params(o.other, o.algebra_value(), f, "other-");
    auto res = find_intertwiner(a, b, o.window_value(), f.ctx, residual_tol);
    json out{{"a", params_str(a)},
             {"b", params_str(b)},
             {"window", o.window_value().str()},
             {"found", res.found},
             {"residual", res.residual},
             {"unknowns", res.unknowns},
             {"equations", res.equations}};
    if (o.show_matrix && res.found) {
        json entries = json::array();
        for (Eigen::Index i = 0; i < res.matrix.rows(); ++i)
            for (Eigen::Index j = 0; j < res.matrix.cols(); ++j)
                if (std::abs(res.matrix(i, j)) > 1e-12)
                    entries.push_back(json::array({res.codomain.lo + static_cast<int>(i),
                                                   res.domain.lo + static_cast<int>(j),
                                                   value_json(Complex(res.matrix(i, j)))}));
        out["entries"] = entries;
    }
    emit(out, o);
    return 0;
}

}  // namespace qiso::tool

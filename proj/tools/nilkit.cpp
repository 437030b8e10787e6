#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilkit/acceptance.hpp"
#include "nilkit/approximate.hpp"
#include "nilkit/collection.hpp"
#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/pgroups.hpp"
#include "nilkit/progressions.hpp"
#include "nilkit/text.hpp"

using namespace nilkit;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;
constexpr int kResourceLimit = 3;

const char* yes_no(bool b) { return b ? "true" : "false"; }

void print_set(const Subset& s) {
    for (const auto& e : s) std::cout << s.group().format(e) << "\n";
}

std::vector<Element> parse_generators(const GroupBackend& g, const std::string& text) {
    const auto base = g.generators();
    std::vector<Element> out;
    for (const auto& piece : split(text, ';')) {
        const auto word = parse_word(trim(piece), static_cast<int>(base.size()), 0);
        out.push_back(evaluate_word(g, base, word));
    }
    return out;
}

struct GroupArgs {
    std::string spec;
    std::string set_path;
};

void add_group(CLI::App* cmd, GroupArgs& args, bool with_set) {
    cmd->add_option("--group", args.spec, "group spec: ut:N, ut:N:mod=M, cyclic:N, product:A,B, table:FILE")->required();
    if (with_set) cmd->add_option("--set", args.set_path, "set file, one element per line")->required();
}

// The quotient map selected by --normal FILE, --reduce M or --abelianize.
struct QuotientArgs {
    std::string normal_path;
    std::int64_t reduce = 0;
    bool abelianize = false;
};

void add_quotient(CLI::App* cmd, QuotientArgs& q) {
    auto* n = cmd->add_option("--normal", q.normal_path, "set file of a normal subgroup N (finite groups)");
    auto* r = cmd->add_option("--reduce", q.reduce, "reduce a cyclic product modulo M");
    auto* a = cmd->add_flag("--abelianize", q.abelianize, "abelianization of ut:N");
    n->excludes(r)->excludes(a);
    r->excludes(a);
}

GroupHomomorphism make_quotient(const BackendPtr& g, const QuotientArgs& q) {
    if (!q.normal_path.empty()) return quotient_by(g, read_set_file(g, q.normal_path)).map;
    if (q.reduce != 0) {
        auto c = std::dynamic_pointer_cast<const CyclicProduct>(g);
        if (!c) throw UnsupportedBackend("--reduce needs a cyclic group");
        return reduction_map(c, q.reduce);
    }
    if (q.abelianize) {
        auto u = std::dynamic_pointer_cast<const UnitriangularBackend>(g);
        if (!u) throw UnsupportedBackend("--abelianize needs a ut backend");
        return abelianization_map(u);
    }
    throw InvalidParameter("one of --normal, --reduce, --abelianize is required");
}

int run(int argc, char** argv) {
    CLI::App app{"nilkit: exact computation in finitely generated nilpotent groups"};
    app.require_subcommand(1);
    int code = kOk;

    // collect
    auto* collect_cmd = app.add_subcommand("collect", "collect a word into basic-commutator normal form");
    int rank = 0, step = 0;
    std::string word_text;
    bool trace = false;
    collect_cmd->add_option("--rank", rank, "number of letters")->required()->check(CLI::PositiveNumber);
    collect_cmd->add_option("--step", step, "nilpotency step")->required()->check(CLI::PositiveNumber);
    collect_cmd->add_flag("--trace", trace, "print the transformation log");
    collect_cmd->add_option("word", word_text, "word, e.g. \"x2^-1 x1\"")->required();
    collect_cmd->callback([&] {
        const Word w = parse_word(word_text, rank, step);
        CollectOptions options;
        options.keep_trace = trace;
        const auto result = collect(w, options);
        for (const auto& s : result.trace.steps) std::cout << s.to_string() << "\n";
        for (const auto& t : result.form.terms()) std::cout << t.commutator.to_string() << "\t" << t.exponent << "\n";
    });

    // basics
    auto* basics_cmd = app.add_subcommand("basics", "list the basic commutators");
    int b_rank = 0, b_step = 0;
    basics_cmd->add_option("--rank", b_rank, "number of letters")->required()->check(CLI::PositiveNumber);
    basics_cmd->add_option("--step", b_step, "nilpotency step")->required()->check(CLI::PositiveNumber);
    basics_cmd->callback([&] {
        const auto table = basic_table(b_rank, b_step);
        for (std::size_t i = 0; i < table->size(); ++i) {
            std::cout << i + 1 << "\t" << (*table)[i].to_string() << "\t";
            const auto& chi = table->weight(i).counts;
            for (std::size_t j = 0; j < chi.size(); ++j) std::cout << (j ? "," : "") << chi[j];
            std::cout << "\n";
        }
    });

    // prog
    auto* prog_cmd = app.add_subcommand("prog", "progressions");
    prog_cmd->require_subcommand(1);
    struct ProgArgs {
        GroupArgs group;
        std::string gens, lens, kind = "ordered";
        bool count_only = false;
        int m_cap = 8;
    } prog;
    auto make_spec = [&] {
        auto g = parse_group_spec(prog.group.spec);
        auto gens = parse_generators(*g, prog.gens);
        return ProgressionSpec{g, gens, parse_int_list(prog.lens)};
    };
    auto* enum_cmd = prog_cmd->add_subcommand("enum", "enumerate a progression");
    auto* chain_cmd = prog_cmd->add_subcommand("chain", "check P_ord in P* in P and P in P_ord^m");
    for (auto* c : {enum_cmd, chain_cmd}) {
        add_group(c, prog.group, false);
        c->add_option("--gens", prog.gens, "generators as words over the group generators, ';'-separated")->required();
        c->add_option("--lens", prog.lens, "side lengths, ','-separated")->required();
    }
    enum_cmd->add_option("--kind", prog.kind, "ordered|star|nilpotent|ball")
        ->check(CLI::IsMember({"ordered", "star", "nilpotent", "ball"}));
    enum_cmd->add_flag("--count", prog.count_only, "print only the size");
    chain_cmd->add_option("--m-cap", prog.m_cap, "largest m tried")->check(CLI::PositiveNumber);
    enum_cmd->callback([&] {
        const auto spec = make_spec();
        EnumeratedSet set = prog.kind == "ordered"     ? enumerate_ordered(spec)
                            : prog.kind == "star"      ? enumerate_nilprogression(spec)
                            : prog.kind == "nilpotent" ? enumerate_nilpotent_progression(spec)
                                                       : enumerate_ball(spec);
        std::cout << "size=" << set.set.size() << "\n";
        if (!prog.count_only) print_set(set.set);
    });
    chain_cmd->callback([&] {
        const auto r = check_chain(make_spec(), prog.m_cap);
        std::cout << "step=" << r.step << "\n"
                  << "ordered_size=" << r.ordered_size << "\n"
                  << "star_size=" << r.star_size << "\n"
                  << "nilpotent_size=" << r.nilpotent_size << "\n"
                  << "ordered_in_star=" << yes_no(r.ordered_in_star) << "\n"
                  << "star_in_nilpotent=" << yes_no(r.star_in_nilpotent) << "\n"
                  << "m_cap=" << r.m_cap << "\n"
                  << "minimal_m=" << (r.minimal_m ? std::to_string(*r.minimal_m) : "none") << "\n";
        if (!r.ordered_in_star || !r.star_in_nilpotent) code = kVerificationFailure;
    });

    // approx
    auto* approx_cmd = app.add_subcommand("approx", "approximate groups");
    approx_cmd->require_subcommand(1);
    GroupArgs ag;
    std::size_t exact_limit = WitnessOptions{}.exact_limit;
    auto witness_of = [&](const Subset& a) {
        WitnessOptions o;
        o.exact_limit = exact_limit;
        return minimal_witness(a, o);
    };

    auto* doubling_cmd = approx_cmd->add_subcommand("doubling", "|A^2|/|A|");
    add_group(doubling_cmd, ag, true);
    doubling_cmd->callback([&] {
        const auto a = read_set_file(parse_group_spec(ag.spec), ag.set_path);
        std::cout << "size=" << a.size() << "\n"
                  << "square_size=" << product_set(a, a).size() << "\n"
                  << "doubling=" << to_string(doubling_constant(a)) << "\n";
    });

    auto* witness_cmd = approx_cmd->add_subcommand("witness", "minimal symmetric X with A^2 in XA");
    add_group(witness_cmd, ag, true);
    witness_cmd->add_option("--exact-limit", exact_limit, "exact search when |A^3| is at most this");
    witness_cmd->callback([&] {
        const auto a = read_set_file(parse_group_spec(ag.spec), ag.set_path);
        const auto w = witness_of(a);
        const bool ok = verify_witness(w);
        std::cout << "k=" << w.k << "\n"
                  << "optimal=" << yes_no(w.optimal) << "\n"
                  << "lower_bound=" << w.lower_bound << "\n"
                  << "verified=" << yes_no(ok) << "\n";
        for (const auto& x : w.x) std::cout << "x=" << w.x.group().format(x) << "\n";
        if (!ok) code = kVerificationFailure;
    });

    auto* growth_cmd = approx_cmd->add_subcommand("growth", "|A^n| <= K^{n-1}|A|");
    add_group(growth_cmd, ag, true);
    int growth_n = 4;
    growth_cmd->add_option("--n", growth_n, "largest n")->check(CLI::PositiveNumber);
    growth_cmd->callback([&] {
        const auto a = read_set_file(parse_group_spec(ag.spec), ag.set_path);
        const auto w = witness_of(a);
        std::cout << "k=" << w.k << "\n";
        for (int n = 1; n <= growth_n; ++n) {
            const bool ok = verify_growth(w, n);
            std::cout << "n=" << n << " size=" << power_set(a, n).size() << " holds=" << yes_no(ok) << "\n";
            if (!ok) code = kVerificationFailure;
        }
    });

    auto* chang_cmd = approx_cmd->add_subcommand("chang", "covering A by products of small sets");
    add_group(chang_cmd, ag, true);
    std::string chang_b;
    int chang_m = 1;
    std::int64_t chang_mp = 1;
    chang_cmd->add_option("--b", chang_b, "set file for B")->required();
    chang_cmd->add_option("--m", chang_m, "B is inside A^M")->check(CLI::PositiveNumber);
    chang_cmd->add_option("--mprime", chang_mp, "|B| >= |A|/M'")->check(CLI::PositiveNumber);
    chang_cmd->callback([&] {
        const auto g = parse_group_spec(ag.spec);
        const auto a = read_set_file(g, ag.set_path);
        const auto b = read_set_file(g, chang_b);
        const auto w = witness_of(a);
        const auto r = chang_cover(a, w, b, chang_m, chang_mp);
        std::ostringstream bound;
        bound.setf(std::ios::fixed);
        bound.precision(4);
        bound << r.log_bound;
        std::cout << "k=" << w.k << "\n"
                  << "t=" << r.t << "\n"
                  << "containment=" << yes_no(r.containment) << "\n"
                  << "log_bound=" << bound.str() << "\n";
        for (std::size_t i = 0; i < r.sets.size(); ++i) std::cout << "s" << i + 1 << "_size=" << r.sets[i].size() << "\n";
        if (!r.containment || r.t > r.log_bound + 1e-9) code = kVerificationFailure;
    });

    QuotientArgs qa;
    int split_r = 3;
    auto* split_cmd = approx_cmd->add_subcommand("split", "splitting map phi for pi: G -> G/H");
    add_group(split_cmd, ag, true);
    add_quotient(split_cmd, qa);
    split_cmd->add_option("--r", split_r, "largest power of A")->check(CLI::PositiveNumber);
    split_cmd->callback([&] {
        const auto g = parse_group_spec(ag.spec);
        const auto a = read_set_file(g, ag.set_path);
        const auto phi = build_splitting(make_quotient(g, qa), a, split_r);
        const auto c = verify_splitting(phi, a);
        std::cout << "right_inverse=" << yes_no(c.right_inverse) << "\n"
                  << "identity=" << yes_no(c.identity) << "\n"
                  << "powers=" << yes_no(c.powers) << "\n"
                  << "products=" << yes_no(c.products) << "\n"
                  << "cover=" << yes_no(c.cover) << "\n"
                  << "size_lemma=" << yes_no(c.size_lemma) << "\n"
                  << "size_corollary=" << yes_no(c.size_corollary) << "\n"
                  << "tuples_checked=" << c.tuples_checked << "\n";
        const auto dom = phi.domain();
        for (const auto& x : dom) {
            std::cout << "phi " << dom.group().format(x) << " -> " << a.group().format(phi(x)) << "\n";
        }
        if (!c.all()) code = kVerificationFailure;
    });

    std::string k1_text, k2_text, k3_text;
    auto* converse_cmd = approx_cmd->add_subcommand("converse", "hypotheses and conclusion of the splitting converse");
    add_group(converse_cmd, ag, true);
    add_quotient(converse_cmd, qa);
    converse_cmd->add_option("--k1", k1_text, "bound for |C^3|/|C| (default: measured)");
    converse_cmd->add_option("--k2", k2_text, "bound for |B_4|/|B_1| (default: measured)");
    converse_cmd->add_option("--k3", k3_text, "bound for |B_4^4|/|B_4| (default: measured)");
    converse_cmd->callback([&] {
        const auto g = parse_group_spec(ag.spec);
        const auto a = read_set_file(g, ag.set_path);
        const auto phi = build_splitting(make_quotient(g, qa), a, 3);
        const auto c = phi.pi().image(a);
        std::array<Subset, 4> b;
        for (int i = 1; i <= 4; ++i)
            b[static_cast<std::size_t>(i - 1)] = power_set(a, 2 * i).filter([&](const Element& x) { return phi.in_kernel(x); });
        auto measured = [](std::size_t num, std::size_t den) {
            return Ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
        };
        const Ratio k1 = k1_text.empty() ? measured(power_set(c, 3).size(), c.size()) : parse_ratio(k1_text);
        const Ratio k2 = k2_text.empty() ? measured(b[3].size(), b[0].size()) : parse_ratio(k2_text);
        const Ratio k3 = k3_text.empty() ? measured(power_set(b[3], 4).size(), b[3].size()) : parse_ratio(k3_text);
        const auto r = verify_splitting_converse(c, b, phi, k1, k2, k3);
        std::cout << "k1=" << to_string(k1) << "\nk2=" << to_string(k2) << "\nk3=" << to_string(k3) << "\n"
                  << "well_formed=" << yes_no(r.well_formed) << "\n";
        for (std::size_t i = 0; i < 5; ++i) std::cout << "h" << i + 1 << "=" << yes_no(r.hypotheses[i]) << "\n";
        std::cout << "union_size=" << r.union_size << "\n"
                  << "cube_size=" << r.cube_size << "\n"
                  << "conclusion=" << yes_no(r.conclusion) << "\n";
        if (r.hypotheses_hold() && !r.conclusion) code = kVerificationFailure;
    });

    std::int64_t pull_mod = 0;
    auto* pullback_cmd = approx_cmd->add_subcommand("pullback", "witness for rho^-1(A) under reduction mod M");
    add_group(pullback_cmd, ag, true);
    pullback_cmd->add_option("--reduce", pull_mod, "rho reduces the group modulo M; --set lies in the image")->required();
    pullback_cmd->callback([&] {
        auto c = std::dynamic_pointer_cast<const CyclicProduct>(parse_group_spec(ag.spec));
        if (!c) throw UnsupportedBackend("pullback needs a cyclic group");
        const auto rho = reduction_map(c, pull_mod);
        const auto a = read_set_file(rho.target(), ag.set_path);
        const auto w = witness_of(a);
        const auto p = pullback_witness(rho, w);
        std::cout << "k=" << w.k << "\n"
                  << "preimage_size=" << p.preimage.size() << "\n"
                  << "pullback_k=" << p.witness.k << "\n"
                  << "verified=" << yes_no(p.verified) << "\n";
        for (const auto& x : p.witness.x) std::cout << "x=" << p.witness.x.group().format(x) << "\n";
        if (!p.verified) code = kVerificationFailure;
    });

    int rank_cap = 2;
    std::int64_t max_length = 2;
    auto* freiman_cmd = approx_cmd->add_subcommand("freiman-search", "search for a coset progression or nilprogression covering A");
    add_group(freiman_cmd, ag, true);
    freiman_cmd->add_option("--rank-cap", rank_cap, "largest number of generators")->check(CLI::NonNegativeNumber);
    freiman_cmd->add_option("--max-length", max_length, "largest side length (nilprogressions)")->check(CLI::PositiveNumber);
    freiman_cmd->callback([&] {
        const auto g = parse_group_spec(ag.spec);
        const auto a = read_set_file(g, ag.set_path);
        if (g->is_finite() && is_abelian(*g)) {
            CosetSearchOptions o;
            o.rank_cap = rank_cap;
            const auto r = brute_coset_progression(a, o);
            std::cout << "kind=coset-progression\nfound=" << yes_no(r.found) << "\n";
            if (r.found) {
                std::cout << "h_size=" << r.h.size() << "\nrank=" << r.generators.size() << "\n";
                for (std::size_t i = 0; i < r.generators.size(); ++i) {
                    std::cout << "generator=" << g->format(r.generators[i]) << " length=" << r.lengths[i] << "\n";
                }
                std::cout << "size=" << r.coset_progression.size() << "\nratio=" << to_string(r.ratio) << "\n";
            }
            std::cout << "exhaustive=" << yes_no(r.exhaustive) << "\nexplored=" << r.explored << "\n";
            if (!r.found) code = kVerificationFailure;
            return;
        }
        NilprogressionSearchOptions o;
        o.rank_cap = std::max(rank_cap, 1);
        o.max_length = max_length;
        const auto r = nilprogression_cover_search(a, o);
        std::cout << "kind=nilprogression\nfound=" << yes_no(r.found) << "\n";
        if (r.found) {
            std::cout << "rank=" << r.generators.size() << "\n";
            for (std::size_t i = 0; i < r.generators.size(); ++i) {
                std::cout << "generator=" << g->format(r.generators[i]) << " length=" << r.lengths[i] << "\n";
            }
            std::cout << "size=" << r.nilprogression.size() << "\nc=" << r.c << "\n";
        }
        std::cout << "explored=" << r.explored << "\n";
        if (!r.found) code = kVerificationFailure;
    });

    // pgroup
    auto* pgroup_cmd = app.add_subcommand("pgroup", "p-group and finite nilpotent group structure");
    pgroup_cmd->require_subcommand(1);
    GroupArgs pg;
    auto* rank_cmd = pgroup_cmd->add_subcommand("rank", "rank and invariant factors of a finite abelian group");
    add_group(rank_cmd, pg, false);
    rank_cmd->callback([&] {
        const auto g = parse_group_spec(pg.spec);
        const auto f = invariant_factors(*g);
        std::cout << "rank=" << f.size() << "\ninvariant_factors=";
        for (std::size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
        std::cout << "\n";
    });
    auto* frattini_cmd = pgroup_cmd->add_subcommand("frattini", "Frattini subgroup G^p[G,G]");
    add_group(frattini_cmd, pg, false);
    frattini_cmd->callback([&] {
        const auto phi = frattini(parse_group_spec(pg.spec));
        std::cout << "size=" << phi.size() << "\n";
        print_set(phi);
    });
    auto* basis_cmd = pgroup_cmd->add_subcommand("basis", "Burnside basis extracted from a generating set");
    add_group(basis_cmd, pg, false);
    basis_cmd->add_option("--set", pg.set_path, "generating set (default: the group generators)");
    basis_cmd->callback([&] {
        const auto g = parse_group_spec(pg.spec);
        const auto s = pg.set_path.empty() ? g->generators() : read_set_file(g, pg.set_path).elements();
        const auto basis = burnside_basis(g, s);
        std::cout << "size=" << basis.size() << "\n";
        for (const auto& x : basis) std::cout << g->format(x) << "\n";
    });
    auto* lcs_cmd = pgroup_cmd->add_subcommand("lcs", "lower central series");
    add_group(lcs_cmd, pg, false);
    lcs_cmd->callback([&] {
        const auto chain = lower_central_series(parse_group_spec(pg.spec));
        for (std::size_t i = 0; i < chain.terms.size(); ++i) std::cout << "gamma" << i + 1 << "_size=" << chain.terms[i].size() << "\n";
        std::cout << "step=" << (chain.step ? std::to_string(*chain.step) : "none") << "\n";
    });
    auto* sylow_cmd = pgroup_cmd->add_subcommand("sylow", "Sylow decomposition of a finite nilpotent group");
    add_group(sylow_cmd, pg, false);
    sylow_cmd->callback([&] {
        for (const auto& f : sylow_decomposition(parse_group_spec(pg.spec))) {
            std::cout << "p=" << f.prime << " size=" << f.subgroup.size() << "\n";
        }
    });
    std::optional<int> span_r;
    auto* span_cmd = pgroup_cmd->add_subcommand("span", "<X> in X^r for a union of subgroups X");
    add_group(span_cmd, pg, true);
    span_cmd->add_option("--r", span_r, "exponent r (default: the rank)");
    span_cmd->callback([&] {
        const auto g = parse_group_spec(pg.spec);
        const auto r = union_subgroups_span(read_set_file(g, pg.set_path), span_r);
        std::cout << "r=" << r.r << "\nspan_size=" << r.span.size() << "\npower_size=" << r.power.size()
                  << "\ncontained=" << yes_no(r.contained) << "\n";
        if (!r.contained) code = kVerificationFailure;
    });

    // accept
    auto* accept_cmd = app.add_subcommand("accept", "run an acceptance suite");
    std::string suite;
    accept_cmd->add_option("suite", suite, "collection|basics|progressions|decomposition|approximate|splitting|pgroups|freiman|all")
        ->required();
    accept_cmd->callback([&] { code = run_acceptance(suite, std::cout); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceLimit& e) {
        std::cerr << "error: resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const InconsistentTrace& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    } catch (const SyntaxError& e) {
        std::cerr << "error: syntax: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const MalformedCommutator& e) {
        std::cerr << "error: malformed commutator: " << e.what() << "\n";
        return kUsage;
    } catch (const MissingAssignment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const OutOfRange& e) {
        std::cerr << "error: out of range: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionViolation& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedBackend& e) {
        std::cerr << "error: unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
}

#include "nilgen/cli.hpp"

#include "nilgen/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace nilgen {

namespace {

// Bad flags, unreadable files and similar problems outside the library.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint32_t p = 3;
    std::size_t n = 1;
    std::optional<std::size_t> t;
    std::size_t rounds = 2;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> budget;
    std::string in, out, other, partial, fa, fc;
    std::string a, b, c, m, a1, b1;
    std::size_t rows = 2, cols = 2, rank = 4, mm = 1, k = 2, samples = 256;
    bool all_paths = false;
    bool random_filler = false;
    std::vector<std::string> paths;
    std::uint64_t subset = 0;
};

class Report {
public:
    template <class T>
    void set(const std::string& key, const T& value) {
        std::ostringstream s;
        if constexpr (std::is_same_v<T, bool>)
            s << (value ? "true" : "false");
        else
            s << value;
        kv_.emplace_back(key, s.str());
    }
    void certificate(std::string text) { certs_.push_back(std::move(text)); }
    std::size_t certificates() const noexcept { return certs_.size(); }

    void print(std::ostream& out, const std::string& echo, std::uint64_t seed, int status) const {
        out << "command=" << echo << "\nseed=" << seed << '\n';
        for (const auto& [k, v] : kv_) out << k << '=' << v << '\n';
        out << "certificates=" << certs_.size() << "\nstatus=" << status << '\n';
        for (const auto& c : certs_) out << c;
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
    std::vector<std::string> certs_;
};

constexpr std::size_t kMaxCertificates = 10;

std::string read_file(const std::string& path) {
    if (path.empty()) throw UsageError("missing input file argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

std::string vec_text(const FVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string elem_text(const GroupElement& x) { return vec_text(x.v) + " | " + vec_text(x.w); }

Elements elements_arg(const std::string& path, const AltSystem& host) {
    if (path.empty()) return {};
    return parse_elements(read_file(path), host);
}

std::string certificate_block(const std::string& attrs, const AltDocument& doc) {
    return "begin certificate " + attrs + '\n' + serialize_document(doc) + "end certificate\n";
}

// ---------------------------------------------------------------- commands

int cmd_gen_free(const Options& o, Report& r) {
    const AltSystem s = free_exterior_system(o.rank, o.p).as_alt_system();
    r.set("rank", o.rank);
    r.set("dimV", s.dim_v());
    r.set("n", s.n());
    if (!o.out.empty()) write_file(o.out, serialize_system(s));
    return kExitOk;
}

int cmd_amalgamate(const Options& o, Report& r) {
    const AltSystem a = parse_system(read_file(o.a));
    const AltSystem c = parse_system(read_file(o.c));
    const AltSystem b = parse_system(read_file(o.b));
    auto map_arg = [&](const std::string& path, const AltSystem& dst) {
        if (path.empty()) return prefix_embedding(b, dst);
        const auto cols = parse_columns(read_file(path), dst.field(), dst.dim_v());
        if (cols.size() != b.dim_v()) throw UsageError("'" + path + "' must list one column per basis vector of B");
        return Embedding{b, dst, FMatrix::from_columns(dst.field(), cols, dst.dim_v())};
    };
    const Embedding f_a = map_arg(o.fa, a);
    const Embedding f_c = map_arg(o.fc, c);
    const Amalgam am = amalgamate(a, c, b, f_a, f_c);
    const bool square = am.g_a.vmap * f_a.vmap == am.g_c.vmap * f_c.vmap;
    const bool restrictions = check_embedding(am.g_a) && check_embedding(am.g_c);
    const bool dims = am.d.dim_v() == a.dim_v() + c.dim_v() - b.dim_v();
    r.set("dimV_A", a.dim_v());
    r.set("dimV_B", b.dim_v());
    r.set("dimV_C", c.dim_v());
    r.set("dimV_D", am.d.dim_v());
    r.set("square_commutes", square);
    r.set("restrictions_ok", restrictions);
    r.set("dimension_formula", dims);
    if (!o.out.empty()) write_file(o.out, serialize_system(am.d));
    return square && restrictions && dims ? kExitOk : kExitViolation;
}

int cmd_build_generic(const Options& o, Report& r) {
    GenericOptions go;
    if (o.budget) go.embed_budget = *o.budget;
    go.random_filler = o.random_filler;
    const std::size_t t = o.t.value_or(2);
    const GenericApprox g = build_generic(o.p, o.n, t, o.rounds, o.seed, go);
    const SubgroupReport s = structural_subgroups(NilGroup(g.sys), 0);
    r.set("p", o.p);
    r.set("n", o.n);
    r.set("t", t);
    r.set("rounds", o.rounds);
    r.set("history", g.history.size());
    r.set("stages", g.stage_count());
    r.set("dimV", g.sys.dim_v());
    r.set("radical_dim", s.center_vspan.size());
    r.set("derived_dim", s.derived_pspan.size());
    if (!o.out.empty()) write_file(o.out, serialize_system(g.sys, AltMeta{o.seed, o.rounds}));
    return kExitOk;
}

int cmd_check_sigma(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const NilGroup g(d);
    const SubgroupReport s = structural_subgroups(g, o.samples, o.seed);
    const LawCheck laws = check_group_laws(g, o.samples, o.seed);
    r.set("sigma1", laws.failures == 0);
    r.set("law_triples", laws.triples);
    r.set("law_exhaustive", laws.exhaustive);
    r.set("law_failures", laws.failures);
    r.set("sigma2", s.sigma2);
    r.set("in_k", s.in_k);
    r.set("extraspecial", s.extraspecial);
    r.set("radical_dim", s.center_vspan.size());
    r.set("derived_dim", s.derived_pspan.size());
    std::size_t failures = laws.failures;
    if (o.t) {
        const Catalog cat = enumerate_catalog(d.p(), d.n(), *o.t);
        const ExtensionReport ext = check_extension_property(d, *o.t, cat, o.budget.value_or(20000000));
        r.set("t", *o.t);
        r.set("sigma3_pairs", ext.pairs_checked);
        r.set("sigma3_embeddings", ext.embeddings_checked);
        r.set("sigma3_failures", ext.failures.size());
        r.set("sigma3", ext.passed());
        failures += ext.failures.size();
        for (std::size_t i = 0; i < ext.failures.size() && i < kMaxCertificates; ++i)
            r.certificate(sigma3_certificate(d, *o.t, ext.failures[i].pair, ext.failures[i].base_map));
    }
    r.set("failures", failures);
    return failures == 0 ? kExitOk : kExitViolation;
}

int cmd_classify(const Options& o, Report& r) {
    const std::size_t t = o.t.value_or(2);
    const Catalog cat = enumerate_catalog(o.p, o.n, t, o.budget.value_or(100000));
    r.set("p", o.p);
    r.set("n", o.n);
    r.set("t", t);
    for (const auto& [dim, count] : cat.counts_by_dim()) r.set("classes_dim_" + std::to_string(dim), count);
    r.set("classes", cat.classes.size());
    r.set("pairs", cat.pairs.size());
    return kExitOk;
}

int cmd_iso(const Options& o, Report& r) {
    const AltSystem a = parse_system(read_file(o.in));
    const AltSystem b = parse_system(read_file(o.other));
    std::optional<Embedding> e;
    if (a.dim_v() == b.dim_v() && a.n() == b.n() && a.p() == b.p()) e = search_embedding(a, b);
    r.set("isomorphic", e.has_value());
    if (e && !o.out.empty()) write_file(o.out, serialize_columns(e->vmap));
    return kExitOk;
}

int cmd_embed(const Options& o, Report& r) {
    const AltSystem src = parse_system(read_file(o.in));
    const AltSystem dst = parse_system(read_file(o.other));
    if (src.p() != dst.p() || src.n() != dst.n()) throw UsageError("systems differ in p or n");
    PartialMap partial;
    if (!o.partial.empty()) {
        const auto cols = parse_columns(read_file(o.partial), dst.field(), dst.dim_v());
        if (cols.size() > src.dim_v()) throw UsageError("partial map has more columns than the source dimension");
        for (std::size_t i = 0; i < cols.size(); ++i) partial.emplace_back(i, cols[i]);
    }
    const auto e = search_embedding(src, dst, partial);
    r.set("found", e.has_value());
    if (e) {
        r.set("verified", check_embedding(*e));
        if (!o.out.empty()) write_file(o.out, serialize_columns(e->vmap));
    }
    return kExitOk;
}

int cmd_qftype(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const Elements tuple = elements_arg(o.a, d);
    const TypeCode code = qf_type_code(d, tuple);
    r.set("k", code.k);
    r.set("relations", code.relations.size());
    for (std::size_t i = 0; i < code.relations.size(); ++i) {
        r.set("relation_" + std::to_string(i) + "_lambda", vec_text(code.relations[i].lambda));
        r.set("relation_" + std::to_string(i) + "_value", vec_text(code.relations[i].value));
    }
    for (std::size_t i = 0; i < code.k; ++i)
        for (std::size_t j = i + 1; j < code.k; ++j)
            r.set("gram_" + std::to_string(i) + "_" + std::to_string(j), vec_text(code.gram_at(i, j)));
    return kExitOk;
}

int cmd_indep(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    r.set("indep", indep0(d, elements_arg(o.a, d), elements_arg(o.b, d), elements_arg(o.c, d)));
    return kExitOk;
}

int cmd_local_base(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const Elements abar = elements_arg(o.a, d);
    const Elements a = elements_arg(o.c, d);
    const Elements b0 = local_base(d, abar, a);
    const bool verified = indep0(d, abar, b0, a);
    r.set("size", b0.size());
    for (std::size_t i = 0; i < b0.size(); ++i) r.set("base_" + std::to_string(i), elem_text(b0[i]));
    r.set("verified", verified);
    if (!o.out.empty()) write_file(o.out, serialize_elements(b0));
    return verified ? kExitOk : kExitViolation;
}

int cmd_kp_suite(const Options& o, Report& r, IndepFn indep) {
    const AltSystem d = parse_system(read_file(o.in));
    const KpReport rep = kp_random_suite(d, o.trials, o.seed, indep);
    r.set("trials", rep.trials);
    for (std::size_t i = 0; i < kKpLawCount; ++i) {
        const std::string name(kp_law_name(static_cast<KpLaw>(i)));
        r.set(name + "_checks", rep.checks[i]);
        r.set(name + "_failures", rep.failures[i]);
    }
    r.set("local_base_verified", rep.local_base_verified);
    r.set("failures", rep.total_failures());
    for (std::size_t i = 0; i < rep.violations.size() && i < kMaxCertificates; ++i)
        r.certificate(kp_certificate(d, rep.violations[i]));
    return rep.total_failures() == 0 ? kExitOk : kExitViolation;
}

int cmd_su_rank(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const SuRankReport rep = su_rank_check(d, o.budget.value_or(2000000));
    r.set("subspaces", rep.subspaces);
    r.set("pairs", rep.pairs);
    r.set("checks", rep.checks);
    r.set("discrepancies", rep.discrepancies);
    r.set("failures", rep.discrepancies);
    return rep.discrepancies == 0 ? kExitOk : kExitViolation;
}

void write_extension(const Options& o, const Extension& ext) {
    if (o.out.empty()) return;
    write_file(o.out, serialize_document(AltDocument{ext.sys, std::nullopt, {{"witness", ext.witness}}, {}}));
}

int cmd_existence(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const Elements abar = elements_arg(o.a, d), b = elements_arg(o.b, d), a = elements_arg(o.c, d);
    const Extension ext = existence_extend(d, abar, b, a);
    r.set("dimV_before", d.dim_v());
    r.set("dimV_after", ext.sys.dim_v());
    for (std::size_t i = 0; i < ext.witness.size(); ++i) r.set("witness_" + std::to_string(i), elem_text(ext.witness[i]));
    r.set("embedding_ok", check_embedding(ext.emb));
    write_extension(o, ext);
    return kExitOk;
}

int cmd_indep_amalgam(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const Extension ext = independence_amalgam(d, elements_arg(o.m, d), elements_arg(o.a, d), elements_arg(o.a1, d),
                                               elements_arg(o.b, d), elements_arg(o.b1, d));
    r.set("dimV_before", d.dim_v());
    r.set("dimV_after", ext.sys.dim_v());
    for (std::size_t i = 0; i < ext.witness.size(); ++i) r.set("witness_" + std::to_string(i), elem_text(ext.witness[i]));
    r.set("embedding_ok", check_embedding(ext.emb));
    write_extension(o, ext);
    return kExitOk;
}

int cmd_ip_witness(const Options& o, Report& r) {
    const IpWitness w = ip_witness(o.p, o.mm, o.subset);
    r.set("p", o.p);
    r.set("m", o.mm);
    r.set("subset", o.subset);
    r.set("x", elem_text(w.x));
    for (std::size_t j = 0; j < w.commutes.size(); ++j) r.set("commutes_" + std::to_string(j), static_cast<bool>(w.commutes[j]));
    r.set("pattern_ok", w.pattern_ok);
    r.set("failures", w.pattern_ok ? 0 : 1);
    return w.pattern_ok ? kExitOk : kExitViolation;
}

int cmd_extract_d1(const Options& o, Report& r) {
    const AltSystem d = parse_system(read_file(o.in));
    const D1Chain ch = extract_d1_chain(NilGroup(d), o.k);
    r.set("k", o.k);
    r.set("raw_length", ch.raw_length);
    r.set("chain_length", ch.d.size());
    r.set("c", vec_text(ch.c));
    for (std::size_t i = 0; i < ch.d.size(); ++i) {
        r.set("d_" + std::to_string(i), elem_text(ch.d[i]));
        r.set("e_" + std::to_string(i), elem_text(ch.e[i]));
    }
    for (std::size_t i = 0; i < ch.steps.size(); ++i) r.set("centralizer_index_" + std::to_string(i), ch.steps[i].index);
    const bool ok = check_embedding(ch.comparison);
    r.set("comparison_ok", ok);
    if (!o.out.empty()) write_file(o.out, serialize_columns(ch.comparison.vmap));
    return ok ? kExitOk : kExitViolation;
}

Tp2Path parse_path(const std::string& text) {
    Tp2Path path;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            path.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad --path entry '" + item + "'");
        }
    }
    return path;
}

int cmd_tp2(const Options& o, Report& r) {
    std::vector<Tp2Path> paths;
    if (o.all_paths) paths = all_tp2_paths(o.rows, o.cols);
    for (const auto& text : o.paths) paths.push_back(parse_path(text));
    const Tp2Report rep = tp2_build_and_check(o.rows, o.cols, o.p, paths, o.budget.value_or(64));
    r.set("rows", o.rows);
    r.set("cols", o.cols);
    r.set("rank", rep.rank);
    r.set("row_pairs", rep.row_pairs);
    r.set("row_pairs_certified", rep.row_pairs_certified);
    r.set("paths", rep.paths);
    r.set("paths_consistent", rep.paths_consistent);
    for (std::size_t i : rep.failed_paths) {
        std::string s;
        for (std::size_t x : paths[i]) s += (s.empty() ? "" : ",") + std::to_string(x);
        r.set("failed_path", s);
    }
    const std::size_t failures = (rep.row_pairs - rep.row_pairs_certified) + rep.failed_paths.size();
    r.set("failures", failures);
    return rep.passed() ? kExitOk : kExitViolation;
}

std::string echo(const std::vector<std::string>& args) {
    std::string s = "nilgen";
    for (const auto& a : args) s += ' ' + a;
    return s;
}

} // namespace

std::string kp_certificate(const AltSystem& d, const KpViolation& v) {
    AltDocument doc{d, std::nullopt, {{"a", v.a}, {"b", v.b}, {"c", v.c}, {"b2", v.b2}, {"a2", v.a2}, {"c2", v.c2}}, {}};
    return certificate_block("check=kp law=" + std::string(kp_law_name(v.law)) + " trial=" + std::to_string(v.trial), doc);
}

std::string sigma3_certificate(const AltSystem& d, std::size_t t, std::size_t pair, const FMatrix& base_map) {
    std::vector<FVector> cols;
    for (std::size_t c = 0; c < base_map.cols(); ++c) cols.push_back(base_map.column(c));
    AltDocument doc{d, std::nullopt, {}, {{"base", cols}}};
    return certificate_block("check=sigma3 t=" + std::to_string(t) + " pair=" + std::to_string(pair), doc);
}

std::vector<Certificate> parse_certificates(const std::string& report) {
    std::vector<Certificate> out;
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("begin certificate", 0) != 0) continue;
        Certificate cert{{}, AltDocument{AltSystem(Field(3), 0, 0), std::nullopt, {}, {}}};
        std::istringstream attrs(line.substr(std::string("begin certificate").size()));
        std::string kv;
        while (attrs >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(Errc::ParseError, "bad certificate attribute '" + kv + "'");
            cert.attrs[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        std::string body;
        bool closed = false;
        while (std::getline(in, line)) {
            if (line == "end certificate") {
                closed = true;
                break;
            }
            body += line + '\n';
        }
        if (!closed) throw Error(Errc::ParseError, "unterminated certificate");
        cert.doc = parse_document(body);
        out.push_back(std::move(cert));
    }
    return out;
}

bool certificate_refails(const Certificate& cert, IndepFn indep) {
    const auto attr = [&](const std::string& key) -> const std::string& {
        const auto it = cert.attrs.find(key);
        if (it == cert.attrs.end()) throw Error(Errc::ParseError, "certificate lacks '" + key + "'");
        return it->second;
    };
    const std::string& check = attr("check");
    const AltSystem& d = cert.doc.sys;
    if (check == "kp") {
        KpViolation v;
        bool known = false;
        for (std::size_t i = 0; i < kKpLawCount; ++i)
            if (kp_law_name(static_cast<KpLaw>(i)) == attr("law")) {
                v.law = static_cast<KpLaw>(i);
                known = true;
            }
        if (!known) throw Error(Errc::ParseError, "unknown law '" + attr("law") + "'");
        v.trial = std::stoul(attr("trial"));
        v.a = cert.doc.set("a");
        v.b = cert.doc.set("b");
        v.c = cert.doc.set("c");
        v.b2 = cert.doc.set("b2");
        v.a2 = cert.doc.set("a2");
        v.c2 = cert.doc.set("c2");
        return kp_violation_refails(d, v, indep);
    }
    if (check == "sigma3") {
        const std::size_t t = std::stoul(attr("t"));
        const std::size_t pair = std::stoul(attr("pair"));
        const Catalog cat = enumerate_catalog(d.p(), d.n(), t);
        if (pair >= cat.pairs.size()) throw Error(Errc::ParseError, "pair index out of range");
        const auto& cols = cert.doc.map("base");
        const FMatrix h = FMatrix::from_columns(d.field(), cols, d.dim_v());
        if (!check_embedding(Embedding{cat.classes[cat.pairs[pair].base], d, h})) return false;
        return !extends_in(cat.pairs[pair], d, h);
    }
    throw Error(Errc::ParseError, "unknown check '" + check + "'");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, IndepFn indep) {
    Options o;
    CLI::App app{"Generic 2-nilpotent groups of exponent p: constructions and checks"};
    app.name("nilgen");
    app.require_subcommand(1);

    std::map<CLI::App*, std::function<int(Report&)>> handlers;
    auto command = [&](const std::string& name, const std::string& about, std::function<int(Report&)> run) {
        CLI::App* sc = app.add_subcommand(name, about);
        handlers[sc] = std::move(run);
        return sc;
    };
    auto prime = [&](CLI::App* sc) { sc->add_option("-p", o.p, "odd prime")->capture_default_str(); };
    auto seed = [&](CLI::App* sc) { sc->add_option("--seed", o.seed, "random seed")->capture_default_str(); };
    auto input = [&](CLI::App* sc) { sc->add_option("--in", o.in, "ALT v1 input")->required(); };
    auto output = [&](CLI::App* sc) { sc->add_option("--out", o.out, "artifact output path"); };
    auto budget = [&](CLI::App* sc) { sc->add_option("--budget", o.budget, "enumeration budget"); };

    auto* sc = command("gen-free", "relatively free system (F_p^r, wedge^2, wedge)", [&](Report& r) { return cmd_gen_free(o, r); });
    prime(sc);
    sc->add_option("--rank", o.rank, "rank r")->required();
    output(sc);

    sc = command("amalgamate", "amalgam of A and C over B", [&](Report& r) { return cmd_amalgamate(o, r); });
    sc->add_option("--a", o.a, "system A")->required();
    sc->add_option("--c", o.c, "system C")->required();
    sc->add_option("--b", o.b, "system B")->required();
    sc->add_option("--fa", o.fa, "columns of B -> A (default: prefix)");
    sc->add_option("--fc", o.fc, "columns of B -> C (default: prefix)");
    output(sc);

    sc = command("build-generic", "finite stage of the generic structure", [&](Report& r) { return cmd_build_generic(o, r); });
    prime(sc);
    sc->add_option("-n", o.n, "dim P")->capture_default_str();
    sc->add_option("-t", o.t, "catalog dimension bound (default 2)");
    sc->add_option("--rounds", o.rounds, "rounds over the catalog")->capture_default_str();
    sc->add_flag("--random-filler", o.random_filler, "seeded random cross values instead of zero");
    seed(sc);
    budget(sc);
    output(sc);

    sc = command("check-sigma", "Sigma1/Sigma2 report, Sigma3 with -t", [&](Report& r) { return cmd_check_sigma(o, r); });
    input(sc);
    sc->add_option("-t", o.t, "check the extension property up to dimV t");
    sc->add_option("--samples", o.samples, "random triples for law checks")->capture_default_str();
    seed(sc);
    budget(sc);

    sc = command("classify", "isomorphism classes up to dimV t", [&](Report& r) { return cmd_classify(o, r); });
    prime(sc);
    sc->add_option("-n", o.n, "dim P")->capture_default_str();
    sc->add_option("-t", o.t, "dimension bound (default 2)");
    budget(sc);

    sc = command("iso", "isomorphism test", [&](Report& r) { return cmd_iso(o, r); });
    input(sc);
    sc->add_option("--other", o.other, "second system")->required();
    output(sc);

    sc = command("embed", "embedding search", [&](Report& r) { return cmd_embed(o, r); });
    input(sc);
    sc->add_option("--other", o.other, "target system")->required();
    sc->add_option("--partial", o.partial, "images of the first source basis vectors ('col' lines)");
    output(sc);

    sc = command("qftype", "quantifier-free type code of a tuple", [&](Report& r) { return cmd_qftype(o, r); });
    input(sc);
    sc->add_option("--a", o.a, "tuple ('elem' lines)")->required();

    sc = command("indep", "A independent from C over B", [&](Report& r) { return cmd_indep(o, r); });
    input(sc);
    sc->add_option("--a", o.a, "A ('elem' lines)");
    sc->add_option("--b", o.b, "B ('elem' lines)");
    sc->add_option("--c", o.c, "C ('elem' lines)");

    sc = command("local-base", "small base inside A for a tuple", [&](Report& r) { return cmd_local_base(o, r); });
    input(sc);
    sc->add_option("--a", o.a, "tuple ('elem' lines)");
    sc->add_option("--c", o.c, "set A ('elem' lines)");
    output(sc);

    sc = command("kp-suite", "random checks of the independence axioms", [&](Report& r) { return cmd_kp_suite(o, r, indep); });
    input(sc);
    sc->add_option("--trials", o.trials, "number of random configurations")->capture_default_str();
    seed(sc);

    sc = command("su-rank-check", "exhaustive SU-rank 1 law", [&](Report& r) { return cmd_su_rank(o, r); });
    input(sc);
    budget(sc);

    sc = command("existence", "independent copy of a tuple over B", [&](Report& r) { return cmd_existence(o, r); });
    input(sc);
    sc->add_option("--a", o.a, "tuple ('elem' lines)");
    sc->add_option("--b", o.b, "base B ('elem' lines)");
    sc->add_option("--c", o.c, "set A containing B ('elem' lines)");
    output(sc);

    sc = command("indep-amalgam", "independence over a model", [&](Report& r) { return cmd_indep_amalgam(o, r); });
    input(sc);
    sc->add_option("--m", o.m, "M ('elem' lines)");
    sc->add_option("--a", o.a, "a0 ('elem' lines)");
    sc->add_option("--a1", o.a1, "a1 ('elem' lines)");
    sc->add_option("--b", o.b, "b0 ('elem' lines)");
    sc->add_option("--b1", o.b1, "b1 ('elem' lines)");
    output(sc);

    sc = command("ip-witness", "independence property witness", [&](Report& r) { return cmd_ip_witness(o, r); });
    prime(sc);
    sc->add_option("-m", o.mm, "number of planes")->capture_default_str();
    sc->add_option("--subset", o.subset, "bitmask of S")->capture_default_str();

    sc = command("extract-d1", "central product of planes inside G", [&](Report& r) { return cmd_extract_d1(o, r); });
    input(sc);
    sc->add_option("-k", o.k, "chain length")->capture_default_str();
    output(sc);

    sc = command("tp2", "TP2 array on a free system", [&](Report& r) { return cmd_tp2(o, r); });
    prime(sc);
    sc->add_option("--rows", o.rows, "rows R")->capture_default_str();
    sc->add_option("--cols", o.cols, "columns I")->capture_default_str();
    sc->add_flag("--all-paths", o.all_paths, "check every path");
    sc->add_option("--path", o.paths, "comma-separated path, repeatable");
    sc->add_option("--budget", o.budget, "maximum free rank (default 64)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Report report;
    int status = kExitOk;
    try {
        status = handlers.at(chosen)(report);
    } catch (const Error& e) {
        Report fail;
        fail.set("error", errc_name(e.code()));
        if (e.line() != 0) fail.set("error_line", e.line());
        fail.set("message", e.what());
        fail.print(out, echo(args), o.seed, kExitUsage);
        err << "nilgen: " << e.what();
        if (e.line() != 0) err << " (line " << e.line() << ')';
        err << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        Report fail;
        fail.set("error", "Usage");
        fail.set("message", e.what());
        fail.print(out, echo(args), o.seed, kExitUsage);
        err << "nilgen: " << e.what() << '\n';
        return kExitUsage;
    }
    report.print(out, echo(args), o.seed, status);
    return status;
}

} // namespace nilgen

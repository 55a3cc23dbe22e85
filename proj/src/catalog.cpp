#include "ybx/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ybx_catalog_embedded.hpp"

namespace ybx {

using nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ExprPtr parse_or_throw(const std::string& text, const std::string& where) {
    try {
        return parse_expr(text);
    } catch (const ParseError& e) {
        throw std::runtime_error("catalog: bad expression in " + where + ": '" + text +
                                 "': " + e.what());
    }
}

Record parse_record(const ordered_json& j) {
    Record r;
    r.raw = j;
    r.id = j.at("id").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    if (r.kind != "constant" && r.kind != "spectral" && r.kind != "rll-tilde")
        throw std::runtime_error("catalog: unknown kind '" + r.kind + "' in " + r.id);
    r.rank = j.at("rank").get<int>();
    if (j.contains("family")) r.family = j.at("family").get<std::string>();
    for (const auto& p : j.at("params")) r.params.push_back(p.get<std::string>());
    for (const auto& f : j.at("free_fns")) r.free_fns.push_back(f.get<std::string>());
    const auto& m = j.at("matrix");
    if (m.size() != 4) throw std::runtime_error("catalog: matrix of " + r.id + " needs 4 rows");
    for (int i = 0; i < 4; ++i) {
        if (m[i].size() != 4)
            throw std::runtime_error("catalog: matrix of " + r.id + " needs 4 columns");
        for (int jj = 0; jj < 4; ++jj)
            r.matrix[i * 4 + jj] =
                parse_or_throw(m[i][jj].get<std::string>(), r.id + " matrix");
    }
    if (j.contains("constraints")) {
        for (const auto& cj : j.at("constraints")) {
            Constraint c;
            std::string type = cj.at("type").get<std::string>();
            if (type == "nonzero") {
                c.type = Constraint::Type::Nonzero;
                c.text = cj.at("expr").get<std::string>();
                c.expr = parse_or_throw(c.text, r.id + " constraint");
            } else if (type == "choice") {
                c.type = Constraint::Type::Choice;
                c.param = cj.at("param").get<std::string>();
                c.text = c.param + " in {";
                bool first = true;
                for (const auto& o : cj.at("options")) {
                    std::string t = o.get<std::string>();
                    c.options.push_back(parse_or_throw(t, r.id + " choice option"));
                    if (!first) c.text += ", ";
                    c.text += t;
                    first = false;
                }
                c.text += "}";
            } else {
                throw std::runtime_error("catalog: unknown constraint type '" + type + "'");
            }
            r.constraints.push_back(std::move(c));
        }
    }
    if (j.contains("citation")) r.citation = j.at("citation").get<std::string>();
    if (j.contains("notes")) r.notes = j.at("notes").get<std::string>();
    if (j.contains("correspondence")) {
        Correspondence c;
        const auto& cc = j.at("correspondence");
        c.target = cc.at("target").get<std::string>();
        c.mode = cc.at("mode").get<std::string>();
        if (cc.contains("note")) c.note = cc.at("note").get<std::string>();
        r.correspondence = std::move(c);
    }
    if (j.contains("source")) r.source = j.at("source").get<std::string>();
    if (j.contains("source_fn_map"))
        for (auto it = j.at("source_fn_map").begin(); it != j.at("source_fn_map").end(); ++it)
            r.source_fn_map[it.key()] = it.value().get<std::string>();
    return r;
}

}  // namespace

Catalog Catalog::load(const std::string& json_text) {
    Catalog cat;
    cat.checksum = fnv1a_hex(json_text);
    ordered_json doc = ordered_json::parse(json_text);
    if (!doc.is_array()) throw std::runtime_error("catalog: top level must be an array");
    for (const auto& j : doc) {
        Record r = parse_record(j);
        if (std::any_of(cat.records.begin(), cat.records.end(),
                        [&](const Record& o) { return o.id == r.id; }))
            throw std::runtime_error("catalog: duplicate id " + r.id);
        cat.records.push_back(std::move(r));
    }
    // Cross-reference checks.
    for (const Record& r : cat.records) {
        if (r.correspondence && !cat.find(r.correspondence->target))
            throw std::runtime_error("catalog: " + r.id + " refers to missing record " +
                                     r.correspondence->target);
        if (!r.source.empty() && !cat.find(r.source))
            throw std::runtime_error("catalog: " + r.id + " refers to missing record " + r.source);
    }
    return cat;
}

const Catalog& Catalog::standard() {
    static const Catalog cat = [] {
        if (const char* path = std::getenv("YBX_CATALOG")) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw std::runtime_error(std::string("cannot open YBX_CATALOG file ") + path);
            std::ostringstream ss;
            ss << in.rdbuf();
            return Catalog::load(ss.str());
        }
        return Catalog::load(kEmbeddedCatalogJson);
    }();
    return cat;
}

const Record* Catalog::find(const std::string& id) const {
    for (const Record& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

const Record& Catalog::get(const std::string& id) const {
    if (const Record* r = find(id)) return *r;
    throw std::runtime_error("unknown catalog id: " + id);
}

std::vector<const Record*> Catalog::list(const std::string& kind, int rank) const {
    std::vector<const Record*> out;
    for (const Record& r : records) {
        if (!kind.empty() && r.kind != kind) continue;
        if (rank != 0 && r.rank != rank) continue;
        out.push_back(&r);
    }
    return out;
}

// ------------------------------------------------------------ stock bindings

ExprPtr bind_constant(const std::string& value) { return parse_expr(value); }

ExprPtr bind_exp_diff(int alpha) {
    std::string a = std::to_string(alpha);
    return parse_expr("exp(" + a + "*(u-v))");
}

ExprPtr bind_smooth(uint64_t seed, int index) {
    uint64_t h = splitmix64(seed ^ (0x5b1ceULL + 0x9e37ULL * static_cast<uint64_t>(index)));
    auto coeff = [&](bool allow_negative) {
        h = splitmix64(h);
        long num = static_cast<long>(h % 5) + 1;
        h = splitmix64(h);
        long den = static_cast<long>(h % 3) + 1;
        h = splitmix64(h);
        bool neg = allow_negative && (h & 1);
        std::string t = std::to_string(num) + "/" + std::to_string(den);
        return neg ? "-" + t : t;
    };
    // Nonzero constant term keeps f(.,0) away from zero for generic samples.
    std::string text =
        coeff(false) + "+" + coeff(true) + "*u+" + coeff(true) + "*v+(" + coeff(true) + ")*u*v";
    return parse_expr(text);
}

// ------------------------------------------------------------ assignments

Assignment draw_assignment(const Record& rec, Draw& d) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Assignment a;
        for (const std::string& p : rec.params) {
            GRat r = d.rat();
            a.params_exact[p] = r;
            a.params_f64[p] = r.to_c64();
        }
        // Choice constraints override the plain draw for their parameter.
        for (const Constraint& c : rec.constraints) {
            if (c.type != Constraint::Type::Choice) continue;
            int idx = d.pick(static_cast<int>(c.options.size()));
            ExactCtx ctx;
            ctx.params = a.params_exact;
            GRat val = eval_expr(c.options[idx], ctx);
            a.params_exact[c.param] = val;
            a.params_f64[c.param] = val.to_c64();
        }
        for (const std::string& f : rec.free_fns) {
            a.fns[f] = bind_smooth(d.next_u64(), static_cast<int>(a.fns.size()));
        }
        bool ok = true;
        for (const Constraint& c : rec.constraints) {
            if (c.type != Constraint::Type::Nonzero) continue;
            ExactCtx ctx;
            ctx.params = a.params_exact;
            GRat val = eval_expr(c.expr, ctx);
            if (val.is_zero() || std::abs(val.to_c64()) < 0.05) { ok = false; break; }
        }
        if (ok) return a;
    }
    throw std::runtime_error("could not draw an admissible assignment for " + rec.id);
}

REval make_eval(const Record& rec, const Assignment& asg) {
    return [&rec, asg](C64 u, C64 v) {
        F64Ctx ctx;
        ctx.u = u;
        ctx.v = v;
        ctx.params = asg.params_f64;
        ctx.fns = &asg.fns;
        return instantiate(rec, ctx);
    };
}

}  // namespace ybx

#pragma once
// Machine-readable catalog of R-matrices: constant solutions, spectral
// solutions, and the RLL solution-space (tilde) families.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ybx/eval.hpp"
#include "ybx/expr.hpp"
#include "ybx/mat.hpp"
#include "ybx/sampling.hpp"

#include "json.hpp"

namespace ybx {

struct Constraint {
    enum class Type { Nonzero, Choice };
    Type type;
    ExprPtr expr;                    // Nonzero: expression that must stay away from 0
    std::string param;               // Choice: parameter fixed to one of the options
    std::vector<ExprPtr> options;
    std::string text;                // original JSON text, for reports
};

struct Correspondence {
    std::string target;   // constant record id this spectral record degenerates to at u=v
    std::string mode;     // direct | similarity | transpose | swap-similarity
    std::string note;
};

struct Record {
    std::string id;
    std::string kind;   // constant | spectral | rll-tilde
    std::string family; // letter label shared by sibling records (e.g. the three B forms)
    int rank = 0;
    std::vector<std::string> params;
    std::vector<std::string> free_fns;
    std::array<ExprPtr, 16> matrix;
    std::vector<Constraint> constraints;
    std::string citation;
    std::string notes;
    std::optional<Correspondence> correspondence;   // spectral records
    std::string source;                             // rll-tilde: spectral id of the Lax source
    std::map<std::string, std::string> source_fn_map;  // tilde slot -> source slot
    nlohmann::ordered_json raw;
};

struct Catalog {
    std::vector<Record> records;
    std::string checksum;   // FNV-1a of the catalog file bytes

    const Record& get(const std::string& id) const;
    const Record* find(const std::string& id) const;
    std::vector<const Record*> list(const std::string& kind = "", int rank = 0) const;

    static Catalog load(const std::string& json_text);
    // Embedded catalog, unless the YBX_CATALOG environment variable points at a file.
    static const Catalog& standard();
};

std::string fnv1a_hex(const std::string& bytes);

template <class C>
Mat<typename C::V> instantiate(const Record& rec, C& ctx) {
    Mat<typename C::V> m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = eval_expr(rec.matrix[i * 4 + j], ctx);
    return m;
}

// A drawn admissible assignment: parameters plus free-function bindings.
struct Assignment {
    std::map<std::string, C64> params_f64;
    std::map<std::string, GRat> params_exact;
    FnBindings fns;
};

// Deterministic admissible draw; rejection-samples the nonzero constraints
// (bounded at 1000 attempts) and resolves choice constraints.
Assignment draw_assignment(const Record& rec, Draw& d);

// Spectral-matrix evaluator over the float backend.
using REval = std::function<Mat<C64>(C64, C64)>;
REval make_eval(const Record& rec, const Assignment& asg);

}  // namespace ybx

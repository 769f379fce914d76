#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "proofbench/calculus/schema.hpp"
#include "proofbench/ceres/ceres.hpp"
#include "proofbench/transform/transform.hpp"
#include "proofbench/view/view.hpp"

namespace proofbench::ops {

using calculus::LKProof;
using calculus::ProofDatabase;

enum class Op { Gentzen, Ceres, Skolemize, Regularize, Herbrand, Struct, ClauseSet, Projections, CutFormulas };

const char* op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);
const std::vector<std::string>& op_names();
// Ops whose result is again a proof.
bool yields_proof(Op op);

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain proofs come with their links expanded; schemata need n.
LKProof resolve_proof(const ProofDatabase& db, const std::string& name, std::optional<std::uint64_t> n);

using Value = std::variant<LKProof, transform::HerbrandSequent, ceres::CeresStruct, ceres::ClauseSet,
                           std::vector<ceres::Projection>, std::vector<kernel::Term>>;

Value apply(Op op, const LKProof& p, const ceres::Limits& limits = {}, const transform::CancelToken* cancel = nullptr);

// One line per node, premises indented below their conclusion.
std::string proof_text(const LKProof& p);
// Newline-terminated rendering for the command line.
std::string text(const Value& v);
view::ViewDocument to_view(const std::string& title, const Value& v, const view::ViewOptions& opts = {});

// "maxClauses,maxSeconds"; throws BadRequest on anything else.
ceres::Limits parse_limits(std::string_view text);

} // namespace proofbench::ops

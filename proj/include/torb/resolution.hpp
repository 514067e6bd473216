#pragma once

// Blowup of characteristic pairs and the resolution driver: repeatedly pick
// a maximal singular face, choose a lattice point in the fundamental
// parallelepiped of its facet vectors, truncate, and re-assign vectors,
// until the pair is characteristic. Every step is recorded in a trace that
// can be replayed and re-verified independently.

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "torb/charpair.hpp"
#include "torb/errors.hpp"
#include "torb/lattice.hpp"
#include "torb/polytope.hpp"

namespace torb {

enum class FaceRule { kMaxOrderThenLex, kLexOnly };
enum class PointRule { kMinSumThenLex };

struct ResolutionConfig {
  // 0 means "derive the default": 10 x the initial sum of vertex orders.
  long long max_steps = 0;
  FaceRule face_rule = FaceRule::kMaxOrderThenLex;
  PointRule point_rule = PointRule::kMinSumThenLex;
};

inline std::string to_string(FaceRule r) {
  return r == FaceRule::kMaxOrderThenLex ? "max-order-then-lex" : "lex-only";
}

inline std::string to_string(PointRule) { return "min-sum-then-lex"; }

// A fully determined blowup: the face, the coefficients c of the chosen
// parallelepiped point with respect to the face's facet vectors (ascending
// facet order), the resulting lattice point Σ c_j λ_{i_j} = d · new_vector
// with new_vector primitive, and whether every coefficient was interior
// (strictly between 0 and 1).
struct BlowupChoice {
  Face face;
  RatVec coefficients;
  IntVec lattice_point;
  Int d;
  IntVec new_vector;
  bool interior = true;

  friend bool operator==(const BlowupChoice&, const BlowupChoice&) = default;
};

struct PairSummary {
  int facet_count = 0;
  int vertex_count = 0;
  std::vector<Int> orders;  // per vertex, aligned with polytope.vertices

  friend bool operator==(const PairSummary&, const PairSummary&) = default;
};

inline PairSummary summarize(const RCharPair& pair) {
  return {pair.polytope.facet_count(), pair.polytope.vertex_count(), vertex_orders(pair)};
}

struct PredictedOrder {
  int vertex = 0;              // index in the blown-up polytope
  std::vector<int> facet_set;  // its facet set there
  Int order;

  friend bool operator==(const PredictedOrder&, const PredictedOrder&) = default;
};

struct ResolutionStep {
  PairSummary before;
  BlowupChoice choice;
  Int face_order_before;
  std::vector<PredictedOrder> predicted;
  std::vector<PredictedOrder> recomputed;
  PairSummary after_summary;
  RCharPair after;
};

struct ResolutionTrace {
  RCharPair initial;
  long long max_steps_effective = 0;
  FaceRule face_rule = FaceRule::kMaxOrderThenLex;
  PointRule point_rule = PointRule::kMinSumThenLex;
  std::vector<ResolutionStep> steps;
  RCharPair final_pair;
};

// Raised when the step guard trips; carries whatever was resolved so far.
class GuardExceededError : public std::runtime_error {
 public:
  GuardExceededError(const std::string& what, ResolutionTrace partial)
      : std::runtime_error(what), partial_(std::make_shared<ResolutionTrace>(std::move(partial))) {}
  const ResolutionTrace& partial_trace() const { return *partial_; }

 private:
  std::shared_ptr<ResolutionTrace> partial_;
};

// Picks the lattice point to blow up with. Candidates are the interior
// representatives of the face matrix when any exist (always the case for a
// maximal singular face); otherwise the nonzero coset representatives.
// Selection: minimize the coefficient sum, tie-break by lexicographically
// smallest coefficient vector.
inline BlowupChoice choose_lattice_point(const RCharPair& pair, const Face& f,
                                         PointRule rule = PointRule::kMinSumThenLex) {
  (void)rule;  // single rule for now; kept in the signature for config echo
  require_face(pair.polytope, f);
  if (f.codim() < 2) throw DomainError("blowup face must have codimension at least 2");
  IntMat m = face_matrix(pair, f);
  if (saturation_index(m) == 1) throw DomainError("nothing to blow up");

  std::vector<RatVec> candidates = interior_representatives(m);
  bool interior = true;
  if (candidates.empty()) {
    interior = false;
    for (RatVec& c : coset_representatives(m)) {
      bool zero = std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
      if (!zero) candidates.push_back(std::move(c));
    }
  }
  // candidates nonempty: the saturation index is >= 2, so a nonzero class exists
  const RatVec* best = &candidates.front();
  Rat best_sum = 0;
  for (const Rat& x : *best) best_sum += x;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    Rat sum = 0;
    for (const Rat& x : candidates[i]) sum += x;
    if (sum < best_sum || (sum == best_sum && lex_less(candidates[i], *best))) {
      best = &candidates[i];
      best_sum = sum;
    }
  }

  BlowupChoice choice;
  choice.face = f;
  choice.coefficients = *best;
  choice.interior = interior;
  RatVec image = mat_vec(m, *best);
  choice.lattice_point.reserve(image.size());
  for (const Rat& x : image) {
    if (denominator(x) != 1)
      throw DomainError("internal: parallelepiped representative has a non-integral image");
    choice.lattice_point.push_back(numerator(x));
  }
  PrimitiveDecomposition pd = primitive_decompose(choice.lattice_point);
  choice.d = pd.scale;
  choice.new_vector = std::move(pd.direction);
  return choice;
}

struct PairBlowupResult {
  RCharPair pair;
  BlowupProvenance provenance;
};

namespace detail {

// Light re-verification that the choice belongs to this pair, so replayed
// traces cannot silently mix states.
inline void require_choice_matches(const RCharPair& pair, const BlowupChoice& choice) {
  require_face(pair.polytope, choice.face);
  if (choice.coefficients.size() != choice.face.codim())
    throw DomainError("choice does not match pair: coefficient count");
  IntMat m = face_matrix(pair, choice.face);
  RatVec image = mat_vec(m, choice.coefficients);
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != Rat(choice.lattice_point[i]))
      throw DomainError("choice does not match pair: lattice point is not the coefficient image");
  if (is_zero_vector(choice.lattice_point)) throw DomainError("choice lattice point is zero");
  PrimitiveDecomposition pd = primitive_decompose(choice.lattice_point);
  if (pd.scale != choice.d || pd.direction != choice.new_vector)
    throw DomainError("choice does not match pair: primitive decomposition");
}

}  // namespace detail

// Applies the choice: truncate the polytope along the face, keep inherited
// facet vectors, assign new_vector to the cut facet. The result must again
// be a valid pair; failures propagate (e.g. zero coefficients make the
// matrix at a surviving corner dependent).
inline PairBlowupResult blowup_pair(const RCharPair& pair, const BlowupChoice& choice) {
  require_r_characteristic(pair);
  detail::require_choice_matches(pair, choice);
  BlowupResult blown = blowup(pair.polytope, choice.face);
  RCharPair out;
  out.polytope = std::move(blown.polytope);
  out.vectors = pair.vectors;
  out.vectors.push_back(choice.new_vector);
  ValidationReport rep = validate_r_characteristic(out);
  if (!rep.ok())
    throw DomainError("blowup produced an invalid pair: " + rep.issues.front().rule + " (" +
                      rep.issues.front().detail + ")");
  return {std::move(out), std::move(blown.provenance)};
}

// Predicted singularity orders of the vertices created by the blowup: a new
// vertex that arose from source vertex b by dropping facet i_s has order
// (c_s / d) · order(b). Entries with a zero coefficient are skipped (no
// valid pair can come out of such a choice anyway). Predictions are
// guaranteed integral and strictly below the source order; either failing
// signals an internal bug.
inline std::vector<PredictedOrder> predict_new_vertex_orders(const RCharPair& pair,
                                                             const BlowupChoice& choice,
                                                             const SimplePolytope& blown,
                                                             const BlowupProvenance& prov) {
  std::vector<PredictedOrder> out;
  for (std::size_t v = 0; v < prov.source_vertex.size(); ++v) {
    if (prov.dropped_facet[v] < 0) continue;
    const std::vector<int>& source = pair.polytope.vertices[prov.source_vertex[v]];
    Int source_order = face_order(pair, Face(source));
    std::size_t s = 0;
    while (s < choice.face.facets.size() && choice.face.facets[s] != prov.dropped_facet[v]) ++s;
    if (s == choice.face.facets.size())
      throw DomainError("internal: dropped facet is not part of the blowup face");
    const Rat& c = choice.coefficients[s];
    if (c == 0) continue;
    Rat predicted = (c / Rat(choice.d)) * Rat(source_order);
    if (denominator(predicted) != 1) throw DomainError("internal: non-integral predicted order");
    if (numerator(predicted) >= source_order)
      throw DomainError("internal: predicted order does not descend");
    out.push_back({static_cast<int>(v), blown.vertices[v], numerator(predicted)});
  }
  return out;
}

namespace detail {

inline const SingularFaceEntry* pick_face(const SingularLocus& locus, FaceRule rule) {
  const SingularFaceEntry* best = nullptr;
  for (const auto& e : locus.entries) {
    if (!e.maximal) continue;
    if (best == nullptr) {
      best = &e;
      continue;
    }
    if (rule == FaceRule::kMaxOrderThenLex) {
      if (e.order > best->order || (e.order == best->order && e.face.facets < best->face.facets))
        best = &e;
    } else {
      if (e.face.facets < best->face.facets) best = &e;
    }
  }
  return best;
}

}  // namespace detail

// The driver. Terminates because the multiset of vertex orders strictly
// decreases at each step; max_steps is a belt-and-braces guard whose trip
// indicates a bug (or a hostile config), not a valid state.
inline ResolutionTrace resolve(const RCharPair& pair, const ResolutionConfig& config = {}) {
  require_r_characteristic(pair);

  ResolutionTrace trace;
  trace.initial = pair;
  trace.face_rule = config.face_rule;
  trace.point_rule = config.point_rule;
  if (config.max_steps > 0) {
    trace.max_steps_effective = config.max_steps;
  } else {
    Int total = 0;
    for (const Int& o : vertex_orders(pair)) total += o;
    Int guard = 10 * total;
    trace.max_steps_effective =
        guard > 1000000000 ? 1000000000LL : static_cast<long long>(guard);
  }

  RCharPair cur = pair;
  for (;;) {
    SingularLocus locus = singular_locus(cur);
    if (locus.empty()) break;
    if (static_cast<long long>(trace.steps.size()) >= trace.max_steps_effective) {
      trace.final_pair = cur;
      throw GuardExceededError("resolution guard exceeded after " +
                                   std::to_string(trace.steps.size()) + " steps",
                               trace);
    }
    const SingularFaceEntry* target = detail::pick_face(locus, config.face_rule);
    if (target == nullptr) throw DomainError("internal: nonempty locus without a maximal element");

    ResolutionStep step;
    step.before = summarize(cur);
    step.face_order_before = target->order;
    step.choice = choose_lattice_point(cur, target->face, config.point_rule);
    PairBlowupResult blown = blowup_pair(cur, step.choice);
    step.predicted = predict_new_vertex_orders(cur, step.choice, blown.pair.polytope, blown.provenance);
    step.recomputed = step.predicted;
    for (auto& p : step.recomputed) {
      p.order = face_order(blown.pair, Face(p.facet_set));
    }
    if (step.recomputed != step.predicted)
      throw DomainError("internal: predicted orders disagree with recomputation");
    step.after_summary = summarize(blown.pair);
    step.after = blown.pair;
    trace.steps.push_back(std::move(step));
    cur = std::move(blown.pair);
  }
  trace.final_pair = std::move(cur);
  return trace;
}

}  // namespace torb

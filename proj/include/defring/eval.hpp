#pragma once
#include <functional>
#include <unordered_map>
#include <vector>

#include "defring/formula.hpp"
#include "defring/structure.hpp"

namespace defring::interp {

class Evaluator;

// A guided-evaluation hint for one consecutive block of quantified variables
// (all Exists or all Forall, outermost first). Soundness contract: the
// generator must yield a superset of the tuples satisfying `guard`, and the
// quantifier body must imply `guard` on its bound block; the evaluator still
// checks the body on every candidate, so a correct hint never changes the
// value of the formula, only the enumeration order and size.
struct QuantHint {
  std::vector<lang::Var> group;
  lang::Formula guard;
  // Yield returns false to stop enumeration (the surrounding quantifier has
  // been decided).
  std::function<void(const Structure&, Evaluator&,
                     const std::function<bool(const std::vector<uint16_t>&)>&)>
      gen;
};

// Shared state threaded through the catalog constructors: the fresh-name
// supply and the hints they emit for their quantifier blocks.
struct BuildCtx {
  lang::FreshSupply fresh;
  std::vector<QuantHint> hints;
};

enum class Strategy : uint8_t { Naive, Guided };

long long default_budget();  // 1e8, overridable via DEFRING_BUDGET

struct EvalOptions {
  Strategy strategy = Strategy::Naive;
  bool validate_hints = false;
  long long budget = -1;  // -1 = default_budget()
  const std::vector<QuantHint>* hints = nullptr;
};

class Evaluator {
 public:
  explicit Evaluator(const Structure& s, EvalOptions opts = {});

  void bind(const lang::Var& v, uint16_t val);
  void unbind(const lang::Var& v);
  bool is_bound(const lang::Var& v) const;

  bool eval(const lang::Formula& f);
  uint16_t eval_term(lang::Term t);

  const Structure& structure() const { return s_; }
  long long used() const { return used_; }

 private:
  struct Cache {
    uint64_t epoch = 0;
    uint16_t val = 0;
  };

  bool eval_quant(const lang::Formula& f);
  bool eval_quant_naive(const lang::Formula& f);
  bool eval_quant_guided(const lang::Formula& f, const QuantHint& h);
  void charge(long long n);
  void validate(const QuantHint& h);

  const Structure& s_;
  EvalOptions opts_;
  std::unordered_map<uint32_t, const QuantHint*> hint_by_head_;
  std::vector<int32_t> env_;   // by var id; -1 = unbound
  std::vector<Cache> tcache_;  // by term id
  uint64_t epoch_ = 1;
  long long used_ = 0;
};

// Check the generator of `h` against its guard by brute force under the
// current environment of `ev` (the guard's parameters must be bound).
// Returns true when every guard-satisfying tuple is yielded.
bool hint_covers_guard(Evaluator& ev, const QuantHint& h);

struct CountResult {
  bool exact = true;
  unsigned long long count = 0;  // exact mode
  size_t hits = 0, samples = 0;  // sample mode
  uint64_t seed = 0;
};

CountResult count_points(const Structure& s, const lang::VirtualSet& v,
                         EvalOptions opts = {});
CountResult count_sample(const Structure& s, const lang::VirtualSet& v, size_t samples,
                         uint64_t seed, EvalOptions opts = {});

}  // namespace defring::interp

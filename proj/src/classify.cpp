#include "defring/classify.hpp"

#include <map>
#include <mutex>

#include "defring/errors.hpp"

namespace defring::classify {

using namespace defring::lang;
using defring::interp::Evaluator;
using defring::interp::Structure;

const SigmaBundle& sigma_bundle(const lie::TripleSpec& t, bool glreg) {
  static std::mutex mu;
  static std::map<std::pair<std::string, bool>, std::unique_ptr<SigmaBundle>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(t.name(), glreg);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto b = std::make_unique<SigmaBundle>();
    b->ctx = std::make_shared<interp::BuildCtx>();
    b->sets = transfer::sigma_sets(t, glreg, *b->ctx);
    it = cache.emplace(key, std::move(b)).first;
  }
  return *it->second;
}

namespace {

void bind_matrix(Evaluator& ev, const Structure& s, const oracle::Mtx<uint16_t>& m,
                 size_t n, const char* label) {
  if (m.rows != n || m.cols != n)
    throw config_error(std::string("point matrix ") + label + " must be " +
                       std::to_string(n) + "x" + std::to_string(n));
  for (uint16_t e : m.e)
    if (e >= s.size)
      throw config_error(std::string("point matrix ") + label +
                         " holds an element outside the structure");
  (void)ev;
}

}  // namespace

int classify_point(const Structure& s, const lie::TripleSpec& t, const TriplePoint& p,
                   bool glreg, interp::Strategy strategy, long long budget) {
  const SigmaBundle& b = sigma_bundle(t, glreg);
  interp::EvalOptions opts;
  opts.strategy = strategy;
  opts.budget = budget;
  opts.hints = &b.ctx->hints;
  Evaluator ev(s, opts);

  size_t ng = t.g().n, n1 = t.h1().n, n2 = t.h2().n;
  bind_matrix(ev, s, p.x, ng, "X");
  bind_matrix(ev, s, p.y, n1, "Y");
  bind_matrix(ev, s, p.z, n2, "Z");
  std::vector<uint16_t> tuple;
  tuple.insert(tuple.end(), p.x.e.begin(), p.x.e.end());
  tuple.insert(tuple.end(), p.y.e.begin(), p.y.e.end());
  tuple.insert(tuple.end(), p.z.e.begin(), p.z.e.end());
  const auto& sig = b.sets.plus.sig;
  if (tuple.size() != sig.size())
    throw config_error("point arity does not match the triple signature");
  for (size_t i = 0; i < sig.size(); ++i) ev.bind(sig[i], tuple[i]);

  bool in_plus = ev.eval(b.sets.plus.body);
  bool in_minus = ev.eval(b.sets.minus.body);
  bool in_zero = ev.eval(b.sets.zero.body);
  int hits = int(in_plus) + int(in_minus) + int(in_zero);
  if (hits != 1)
    throw partition_error("sigma sets are not a partition at a point of " + t.name());
  return in_plus ? 1 : (in_minus ? -1 : 0);
}

}  // namespace defring::classify

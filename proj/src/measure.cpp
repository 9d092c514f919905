#include "bs/measure.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "bs/projections.hpp"

namespace bs::walk {

namespace {

constexpr std::size_t kGenerationGuard = 200000;

GenerationReport generation_certificate(const Presentation& pres,
                                        const std::vector<Atom>& atoms, int depth_cap) {
  GenerationReport rep;
  rep.depth_cap = depth_cap;

  std::vector<std::pair<std::string, NormalForm>> targets;
  targets.emplace_back("a", core::reduce(pres, "a"));
  targets.emplace_back("a^-1", core::reduce(pres, "a^-1"));
  targets.emplace_back("b", core::reduce(pres, "b"));
  targets.emplace_back("b^-1", core::reduce(pres, "b^-1"));

  std::unordered_map<NormalForm, int, core::NormalFormHash> seen;
  std::vector<NormalForm> frontier;
  for (const auto& a : atoms) {
    if (seen.emplace(a.g, 1).second) frontier.push_back(a.g);
  }
  for (int depth = 2; depth <= depth_cap && !frontier.empty(); ++depth) {
    std::vector<NormalForm> next;
    for (const auto& g : frontier) {
      for (const auto& a : atoms) {
        NormalForm h = core::multiply(g, a.g);
        if (seen.emplace(h, depth).second) next.push_back(std::move(h));
      }
      if (seen.size() > kGenerationGuard) {
        rep.search_exhausted = false;
        next.clear();
        break;
      }
    }
    frontier = std::move(next);
    if (!rep.search_exhausted) break;
  }

  for (const auto& [name, t] : targets) {
    auto it = seen.find(t);
    if (it != seen.end())
      rep.reached.emplace_back(name, it->second);
    else
      rep.missing.push_back(name);
  }
  rep.certified = rep.missing.empty();
  return rep;
}

}  // namespace

Measure measure_from_atoms(const Presentation& pres,
                           std::vector<std::pair<NormalForm, Rat>> atoms, int depth_cap) {
  Measure m;
  m.pres = pres;
  Rat sum(0);
  std::unordered_set<NormalForm, core::NormalFormHash> support;
  for (auto& [g, w] : atoms) {
    if (w <= 0)
      fail(ErrorCode::WeightSumError,
           "weight " + rat_to_string(w) + " for " + g.to_string() +
               " is not positive");
    if (!support.insert(g).second)
      fail(ErrorCode::DuplicateSupport,
           "support words collide after reduction: " + g.to_string());
    sum += w;
    m.atoms.push_back(Atom{g, w, g.to_string()});
  }
  if (m.atoms.empty())
    fail(ErrorCode::WeightSumError, "measure has empty support");
  if (sum != 1)
    fail(ErrorCode::WeightSumError,
         "weights sum to " + rat_to_string(sum) + ", expected 1");
  m.generation = generation_certificate(pres, m.atoms, depth_cap);
  return m;
}

Measure validate_measure(const Presentation& pres,
                         const std::vector<std::pair<std::string, std::string>>& support,
                         int depth_cap) {
  std::vector<std::pair<NormalForm, Rat>> atoms;
  std::vector<std::string> texts;
  for (const auto& [word, weight] : support) {
    atoms.emplace_back(core::reduce(pres, word), parse_rat(weight));
    texts.push_back(word);
  }
  Measure m = measure_from_atoms(pres, std::move(atoms), depth_cap);
  for (std::size_t i = 0; i < texts.size(); ++i) m.atoms[i].text = texts[i];
  return m;
}

Rat drift(const Measure& m) {
  Rat d(0);
  for (const auto& a : m.atoms) d += a.prob * Rat(Int(a.g.level()));
  return d;
}

double entropy(const Measure& m) {
  double h = 0;
  for (const auto& a : m.atoms) {
    double p = rat_to_double(a.prob);
    h -= p * std::log2(p);
  }
  return h;
}

double moment(const Measure& m, double k, MomentFunctional f, int bfs_cap) {
  if (!(k > 0)) fail(ErrorCode::ConfigError, "moment order must be positive");
  core::BallOracle oracle(m.pres);
  double acc = 0;
  for (const auto& a : m.atoms) {
    double v = 0;
    switch (f) {
      case MomentFunctional::WordLength:
        v = static_cast<double>(core::word_length(a.g, bfs_cap, &oracle).value());
        break;
      case MomentFunctional::LnA: {
        core::Presentation pres = m.pres;
        if (!pres.hyperbolic_class())
          fail(ErrorCode::WrongClass, "ln A moment needs a hyperbolic class");
        double la = std::log(static_cast<double>(pres.abs_q()) / pres.p);
        v = std::fabs(la * static_cast<double>(a.g.level()));
        break;
      }
      case MomentFunctional::LnOnePlusAbsB: {
        if (!m.pres.hyperbolic_class())
          fail(ErrorCode::WrongClass, "B moment needs a hyperbolic class");
        Rat B = proj::project_hyp(a.g).B;
        Rat mag = B < 0 ? Rat(-B) : B;
        v = ln_rat(Rat(1 + mag));
        break;
      }
      case MomentFunctional::EuclidX: {
        if (m.pres.cls != core::GroupClass::EqualAbs)
          fail(ErrorCode::WrongClass, "x moment needs the equal-modulus class");
        Int x = proj::project_euclid(a.g).x;
        v = rat_to_double(Rat(abs_int(x)));
        break;
      }
    }
    acc += rat_to_double(a.prob) * std::pow(v, k);
  }
  return acc;
}

Measure reflect(const Measure& m) {
  std::vector<std::pair<NormalForm, Rat>> atoms;
  for (const auto& a : m.atoms) atoms.emplace_back(core::invert(a.g), a.prob);
  return measure_from_atoms(m.pres, std::move(atoms), m.generation.depth_cap);
}

}  // namespace bs::walk

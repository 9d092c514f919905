#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bs/normal_form.hpp"
#include "bs/word_length.hpp"

namespace bs::walk {

using core::NormalForm;
using core::Presentation;

struct Atom {
  NormalForm g;
  Rat prob;
  std::string text;  // the support word as given, for reports
};

struct GenerationReport {
  bool certified = false;
  int depth_cap = 0;
  // which of a, a^-1, b, b^-1 were reached as semigroup products, with depth
  std::vector<std::pair<std::string, int>> reached;
  std::vector<std::string> missing;
  bool search_exhausted = true;  // false if the product set hit the size guard
};

struct Measure {
  Presentation pres;
  std::vector<Atom> atoms;
  GenerationReport generation;

  const Atom& atom(std::size_t i) const { return atoms[i]; }
  std::size_t size() const { return atoms.size(); }
};

// Validates weights (positive, exact sum 1), reduces support words, rejects
// duplicates after reduction, and runs the generation certificate up to
// depth_cap products.
Measure validate_measure(const Presentation& pres,
                         const std::vector<std::pair<std::string, std::string>>& support,
                         int depth_cap = 6);

Measure measure_from_atoms(const Presentation& pres,
                           std::vector<std::pair<NormalForm, Rat>> atoms,
                           int depth_cap = 6);

// Exact level drift sum mu(g) * level(g).
Rat drift(const Measure& m);

// Shannon entropy of the weight vector, in bits.
double entropy(const Measure& m);

enum class MomentFunctional { WordLength, LnA, LnOnePlusAbsB, EuclidX };

// E[ f(g)^k ]. WordLength requires every atom's length to resolve exactly.
double moment(const Measure& m, double k, MomentFunctional f, int bfs_cap = 10);

// Pushforward under g -> g^-1.
Measure reflect(const Measure& m);

}  // namespace bs::walk

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "causalbox/graph.hpp"

namespace causalbox {

struct Recipe;

// One conditional factor. Without a base it is a conditional of the observed distribution;
// with a base it is the conditional of the kernel the base recipe describes.
struct Term {
  std::string head;
  std::vector<std::string> given;
  std::shared_ptr<const Recipe> base;

  std::string str() const;
};

// sum over `summed` of the product of `terms`.
struct Recipe {
  std::vector<std::string> summed;  // sorted
  std::vector<Term> terms;          // sorted by their printed form

  std::string str() const;
  std::vector<std::string> freeVariables() const;  // sorted
  void canonicalize();
};

// Removes summed variables whose only occurrence is as the head of a single factor.
Recipe sumOutTrivial(Recipe r);

struct VermaRecord {
  Recipe recipe;
  std::vector<std::string> independentOf;  // sorted
};

struct ConstraintRecord {
  enum class Kind { CI, Verma };
  Kind kind = Kind::CI;
  CiStatement ci;
  VermaRecord verma;

  static ConstraintRecord fromCi(CiStatement s);
  static ConstraintRecord fromVerma(VermaRecord v);
  std::string str() const;
};

}  // namespace causalbox

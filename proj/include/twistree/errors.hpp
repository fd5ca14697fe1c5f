#pragma once

#include <stdexcept>
#include <string>

namespace twistree {

struct EddyUndefined : std::runtime_error {
  explicit EddyUndefined(const std::string& what) : std::runtime_error(what) {}
};

struct RootHasNoEdge : std::logic_error {
  explicit RootHasNoEdge(const std::string& what) : std::logic_error(what) {}
};

// Internal-corruption errors: these fire only when an upstream invariant of
// the forward/inverse maps has been violated, never on valid input.
struct LabelNotFound : std::runtime_error {
  explicit LabelNotFound(const std::string& what) : std::runtime_error(what) {}
};

struct MergeConflict : std::runtime_error {
  explicit MergeConflict(const std::string& what) : std::runtime_error(what) {}
};

struct UnresolvedPlaceholder : std::runtime_error {
  explicit UnresolvedPlaceholder(const std::string& what) : std::runtime_error(what) {}
};

struct ResourceBound : std::runtime_error {
  explicit ResourceBound(const std::string& what) : std::runtime_error(what) {}
};

struct BadCode : std::runtime_error {
  explicit BadCode(const std::string& what) : std::runtime_error(what) {}
};

struct SubstitutionIllFormed : std::logic_error {
  explicit SubstitutionIllFormed(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct RngExhausted : std::runtime_error {
  explicit RngExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistree

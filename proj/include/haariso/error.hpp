#ifndef HAARISO_ERROR_HPP
#define HAARISO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace haariso {

enum class Err {
  InvalidSpecification,
  BudgetExhausted,
  NotNormal,
  Unsupported,
  NotTransitive,
  NotABlockSystem,
  NotAGraph,
  InvalidMap,
  InvalidAction,
  WrongCase,
  DegenerateInput,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Err kind() const { return kind_; }

  static Error invalid_specification(const std::string& w) { return {Err::InvalidSpecification, w}; }
  static Error budget_exhausted(const std::string& w) { return {Err::BudgetExhausted, w}; }
  static Error not_normal(const std::string& w) { return {Err::NotNormal, w}; }
  static Error unsupported(const std::string& w) { return {Err::Unsupported, w}; }
  static Error not_transitive(const std::string& w) { return {Err::NotTransitive, w}; }
  static Error not_a_block_system(const std::string& w) { return {Err::NotABlockSystem, w}; }
  static Error not_a_graph(const std::string& w) { return {Err::NotAGraph, w}; }
  static Error invalid_map(const std::string& w) { return {Err::InvalidMap, w}; }
  static Error invalid_action(const std::string& w) { return {Err::InvalidAction, w}; }
  static Error wrong_case(const std::string& w) { return {Err::WrongCase, w}; }
  static Error degenerate_input(const std::string& w) { return {Err::DegenerateInput, w}; }
  static Error internal(const std::string& w) { return {Err::Internal, w}; }

private:
  Err kind_;
};

const char* err_name(Err e);

} // namespace haariso

#endif

#include "gapr/error.hpp"

namespace gapr {
namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string text = "instance validation failed";
  for (const auto& v : violations) {
    text += "\n  ";
    text += v.entity;
    text += ": ";
    text += v.message;
  }
  return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace gapr

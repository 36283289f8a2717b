#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace aspec {

enum class Status { pass, fail, not_applicable, error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not-applicable";
    case Status::error: return "error";
  }
  return "error";
}

inline Status status_from_string(std::string_view s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "not-applicable") return Status::not_applicable;
  return Status::error;
}

/// Outcome of a checker: status, witnesses for failures, and computed values.
struct Verdict {
  Status status = Status::pass;
  std::vector<std::string> witnesses;
  nlohmann::json values = nlohmann::json::object();

  static Verdict not_applicable(std::string reason) {
    Verdict v;
    v.status = Status::not_applicable;
    v.values["reason"] = std::move(reason);
    return v;
  }

  bool passed() const { return status == Status::pass; }

  void fail(std::string witness) {
    status = Status::fail;
    witnesses.push_back(std::move(witness));
  }

  /// Folds a sub-verdict in: fail/error dominate, not-applicable only survives alone.
  void absorb(const Verdict& sub) {
    if (sub.status == Status::error || status == Status::error)
      status = Status::error;
    else if (sub.status == Status::fail || status == Status::fail)
      status = Status::fail;
    witnesses.insert(witnesses.end(), sub.witnesses.begin(), sub.witnesses.end());
  }
};

}  // namespace aspec

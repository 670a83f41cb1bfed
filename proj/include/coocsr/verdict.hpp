#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace coocsr {

/// Outcome of a relation check. On failure `clause` names the violated
/// condition using the field names of the corresponding proof relation
/// (e.g. "CSR_wf_rowsorted", "partial_CSR_rowptr").
struct Verdict {
  bool ok = true;
  std::string clause;
  std::string detail;
  std::optional<std::size_t> event;
  /// Set when some value check ran above the sum-oracle cap and fell back to
  /// comparing against the appearance-order fold.
  bool deterministic_fallback = false;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string clause, std::string detail = {}) {
    Verdict v;
    v.ok = false;
    v.clause = std::move(clause);
    v.detail = std::move(detail);
    return v;
  }

  explicit operator bool() const noexcept { return ok; }

  Verdict& at_event(std::size_t index) {
    event = index;
    return *this;
  }

  std::string to_string() const {
    if (ok) return deterministic_fallback ? "ok (checked-deterministic)" : "ok";
    std::string s = "FAIL clause=" + clause;
    if (event) s += " event=" + std::to_string(*event);
    if (!detail.empty()) s += " detail=\"" + detail + "\"";
    return s;
  }
};

}  // namespace coocsr

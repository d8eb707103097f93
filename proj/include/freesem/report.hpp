#ifndef FREESEM_REPORT_HPP
#define FREESEM_REPORT_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace freesem {

// One failed law instance. `rule` is a stable machine-readable tag, `where`
// names the offending indices so the failure can be replayed through the
// library call that produced it.
struct Violation {
  std::string rule;
  std::vector<std::pair<std::string, long long>> where;
  std::string detail;

  std::string str() const {
    std::ostringstream os;
    os << rule;
    for (const auto& [k, v] : where) os << ' ' << k << '=' << v;
    if (!detail.empty()) os << " : " << detail;
    return os.str();
  }
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string rule, std::vector<std::pair<std::string, long long>> where = {},
           std::string detail = {}) {
    violations.push_back(Violation{std::move(rule), std::move(where), std::move(detail)});
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (Violation v : other.violations) {
      if (!prefix.empty()) v.rule = prefix + v.rule;
      violations.push_back(std::move(v));
    }
  }

  std::string str() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) os << '\n';
      os << violations[i].str();
    }
    return os.str();
  }
};

}  // namespace freesem

#endif

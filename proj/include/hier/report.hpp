#pragma once

#include <string>
#include <vector>

#include "hier/io.hpp"
#include "hier/ring.hpp"

namespace hier {

struct CheckEntry {
  std::string check;
  std::string indices;
  DiffPoly residual;  // zero when the check passes
  bool pass() const { return residual.is_zero(); }
};

class Report {
 public:
  void add(std::string check, std::string indices, DiffPoly residual);
  void merge(const Report& other);
  const std::vector<CheckEntry>& entries() const { return entries_; }
  std::vector<CheckEntry> failures() const;
  bool ok() const;
  size_t size() const { return entries_.size(); }
  // [{check, indices, residual}] with residual empty on pass.
  Json to_json() const;

 private:
  std::vector<CheckEntry> entries_;
};

}  // namespace hier

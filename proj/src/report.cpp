#include "hier/report.hpp"

namespace hier {

void Report::add(std::string check, std::string indices, DiffPoly residual) {
  entries_.push_back({std::move(check), std::move(indices), std::move(residual)});
}

void Report::merge(const Report& other) { entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end()); }

std::vector<CheckEntry> Report::failures() const {
  std::vector<CheckEntry> out;
  for (const auto& e : entries_)
    if (!e.pass()) out.push_back(e);
  return out;
}

bool Report::ok() const {
  for (const auto& e : entries_)
    if (!e.pass()) return false;
  return true;
}

Json Report::to_json() const {
  Json arr = Json::array();
  for (const auto& e : entries_) {
    Json j = {{"check", e.check}, {"indices", e.indices}};
    j["residual"] = e.pass() ? Json() : hier::to_json(e.residual);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace hier

#include "tauseq/combinatorics.hpp"

#include "tauseq/arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace tauseq {

bool is_partition(const Partition& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) return false;
    if (i + 1 < parts.size() && parts[i] < parts[i + 1]) return false;
  }
  return true;
}

int partition_size(const Partition& parts) { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition current;
  std::function<void(int, int)> rec = [&](int remaining, int largest) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, largest); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

MayaDiagram::MayaDiagram(int charge) : charge_(charge) {}

MayaDiagram::MayaDiagram(int charge, std::set<int> added, std::set<int> removed)
    : charge_(charge), added_(std::move(added)), removed_(std::move(removed)) {
  if (added_.size() != removed_.size())
    throw std::invalid_argument("Maya diagram: added and removed sites differ in number");
  if (!added_.empty() && *added_.begin() < charge_)
    throw std::invalid_argument("Maya diagram: added site below the charge");
  if (!removed_.empty() && *removed_.rbegin() >= charge_)
    throw std::invalid_argument("Maya diagram: removed site at or above the charge");
}

MayaDiagram MayaDiagram::from_occupied(const std::set<int>& occupied, int floor) {
  // A charge-c vacuum has exactly c - floor occupied sites at or above floor.
  int count = 0;
  for (int s : occupied)
    if (s >= floor) ++count;
  const int charge = floor + count;
  std::set<int> added, removed;
  for (int s : occupied)
    if (s >= charge) added.insert(s);
  for (int s = floor; s < charge; ++s)
    if (!occupied.contains(s)) removed.insert(s);
  return MayaDiagram(charge, std::move(added), std::move(removed));
}

bool MayaDiagram::occupied(int site) const {
  if (site >= charge_) return added_.contains(site);
  return !removed_.contains(site);
}

int MayaDiagram::lowest_excitation() const {
  int low = charge_;
  if (!removed_.empty()) low = std::min(low, *removed_.begin());
  if (!added_.empty()) low = std::min(low, *added_.begin());
  return low;
}

std::vector<int> MayaDiagram::occupied_from(int floor) const {
  std::vector<int> sites(added_.rbegin(), added_.rend());
  for (int s = charge_ - 1; s >= floor; --s)
    if (!removed_.contains(s)) sites.push_back(s);
  std::erase_if(sites, [floor](int s) { return s < floor; });
  return sites;
}

MayaDiagram maya_from_young_charge(const Partition& parts, int charge) {
  if (!is_partition(parts)) throw std::invalid_argument("not a partition");
  const int len = static_cast<int>(parts.size());
  std::set<int> occupied;
  for (int k = 1; k <= len; ++k) occupied.insert(charge + parts[k - 1] - k);
  // Sites charge - k for k > len continue the vacuum tail.
  return MayaDiagram::from_occupied(occupied, charge - len);
}

std::pair<Partition, int> young_charge_from_maya(const MayaDiagram& diagram) {
  const int charge = diagram.charge();
  const int floor = diagram.lowest_excitation();
  const auto sites = diagram.occupied_from(floor);
  Partition parts;
  for (std::size_t k = 1; k <= sites.size(); ++k) {
    int part = sites[k - 1] - charge + static_cast<int>(k);
    if (part == 0) break;
    parts.push_back(part);
  }
  return {parts, charge};
}

std::string half_integer_string(int site) {
  const long long twice = 2LL * site + 1;
  return std::to_string(twice) + "/2";
}

int parse_half_integer(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || text.substr(slash + 1) != "2")
    throw ParseError("half-integer must look like 'k/2' with k odd: '" + std::string(text) + "'");
  auto num = text.substr(0, slash);
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size() || value % 2 == 0)
    throw ParseError("half-integer must look like 'k/2' with k odd: '" + std::string(text) + "'");
  return static_cast<int>((value - 1) / 2);
}

Partition parse_partition(std::string_view text) {
  Partition parts;
  if (text.empty() || text == "()") return parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto field = text.substr(start, end - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    int part = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), part);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw ParseError("malformed partition '" + std::string(text) + "'");
    parts.push_back(part);
    start = end + 1;
  }
  if (!is_partition(parts)) throw ParseError("parts must be positive and weakly decreasing: '" + std::string(text) + "'");
  return parts;
}

nlohmann::json maya_to_json(const MayaDiagram& diagram) {
  nlohmann::json added = nlohmann::json::array(), removed = nlohmann::json::array();
  for (auto it = diagram.added().rbegin(); it != diagram.added().rend(); ++it)
    added.push_back(half_integer_string(*it));
  for (auto it = diagram.removed().rbegin(); it != diagram.removed().rend(); ++it)
    removed.push_back(half_integer_string(*it));
  return {{"charge", diagram.charge()}, {"added", added}, {"removed", removed}};
}

MayaDiagram maya_from_json(const nlohmann::json& doc) {
  try {
    std::set<int> added, removed;
    for (const auto& s : doc.at("added")) added.insert(parse_half_integer(s.get<std::string>()));
    for (const auto& s : doc.at("removed")) removed.insert(parse_half_integer(s.get<std::string>()));
    return MayaDiagram(doc.at("charge").get<int>(), std::move(added), std::move(removed));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Maya JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid Maya diagram: ") + e.what());
  }
}

}  // namespace tauseq

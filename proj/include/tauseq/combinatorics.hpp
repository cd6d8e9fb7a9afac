#pragma once

// Maya diagrams and their bijection with (partition, charge) pairs.
//
// Half-integer positions are stored as integer "sites": the position
// p in Z + 1/2 is the site p - 1/2, so -1/2 is site -1 and 1/2 is site 0.
// The charge-c vacuum occupies every site below c.

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tauseq {

/// Weakly decreasing list of positive parts; empty is the empty partition.
using Partition = std::vector<int>;

bool is_partition(const Partition& parts);

/// All partitions of n, in reverse lexicographic order ((n) first).
std::vector<Partition> partitions_of(int n);

int partition_size(const Partition& parts);

class MayaDiagram {
 public:
  /// The charge-`charge` vacuum.
  explicit MayaDiagram(int charge = 0);

  /// Throws std::invalid_argument unless added sites lie at or above the
  /// charge, removed sites lie below it, and both sets have equal size.
  MayaDiagram(int charge, std::set<int> added, std::set<int> removed);

  /// Builds the diagram whose occupied sites are exactly `occupied` above
  /// `floor`, with everything below `floor` occupied. The charge is inferred.
  static MayaDiagram from_occupied(const std::set<int>& occupied, int floor);

  int charge() const { return charge_; }
  const std::set<int>& added() const { return added_; }
  const std::set<int>& removed() const { return removed_; }

  bool occupied(int site) const;

  /// Occupied sites >= `floor`, in descending order.
  std::vector<int> occupied_from(int floor) const;

  /// Lowest site that differs from the vacuum, or the charge if none does.
  int lowest_excitation() const;

  friend bool operator==(const MayaDiagram&, const MayaDiagram&) = default;

 private:
  int charge_;
  std::set<int> added_;
  std::set<int> removed_;
};

/// Occupied sites are {charge + parts[k] - k - 1 : k = 0, 1, ...}.
MayaDiagram maya_from_young_charge(const Partition& parts, int charge);

std::pair<Partition, int> young_charge_from_maya(const MayaDiagram& diagram);

/// Site k rendered as the half-integer (2k+1)/2, e.g. -1 -> "-1/2".
std::string half_integer_string(int site);

/// Inverse of half_integer_string. Throws ParseError.
int parse_half_integer(std::string_view text);

/// Parses "4,2,2,1" (empty string is the empty partition). Throws ParseError.
Partition parse_partition(std::string_view text);

nlohmann::json maya_to_json(const MayaDiagram& diagram);
MayaDiagram maya_from_json(const nlohmann::json& doc);

}  // namespace tauseq

#pragma once

// Offline lookup against an OEIS "stripped" snapshot and an opt-in live
// search client.

#include "tauseq/arith.hpp"

#include <chrono>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tauseq {

class QueryTooShort : public Error {
 public:
  using Error::Error;
};

struct MalformedLine {
  std::size_t line = 0;  ///< 1-based
  std::string reason;
};

class StrippedDb {
 public:
  /// Throws ParseError for an A-number that is not "A" + 6 digits or an empty term list.
  void add(const std::string& anumber, std::vector<Integer> terms);

  const std::map<std::string, std::vector<Integer>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Lines rejected while loading; the rest of the file is still used.
  const std::vector<MalformedLine>& malformed() const { return malformed_; }
  void report(MalformedLine m) { malformed_.push_back(std::move(m)); }

 private:
  std::map<std::string, std::vector<Integer>> entries_;
  std::vector<MalformedLine> malformed_;
};

bool is_anumber(std::string_view text);

/// Lines "A000045 ,0,1,1,2,3,5,"; '#' starts a comment line. gzip input is
/// detected by its magic bytes. Throws Error when the stream cannot be read
/// or the compressed data is corrupt.
StrippedDb load_stripped(std::istream& in);
StrippedDb load_stripped_file(const std::string& path);

/// Stripped-format text of every entry, sorted by A-number.
std::string serialize(const StrippedDb& db);

struct MatchPolicy {
  bool trim_leading_ones = true;
  std::size_t min_match_terms = 10;  ///< at least 4
  bool allow_offset = true;          ///< match anywhere in the entry, not only at its start
};

struct Match {
  std::string anumber;
  std::size_t position = 0;  ///< index in the entry where the query starts
  friend bool operator==(const Match&, const Match&) = default;
};

/// Entries containing the (trimmed) query as a contiguous run, by A-number.
/// Throws QueryTooShort when fewer than min_match_terms remain after trimming,
/// std::invalid_argument for a policy with min_match_terms < 4.
std::vector<Match> match_sequence(const StrippedDb& db, const std::vector<Integer>& terms,
                                  const MatchPolicy& policy = {});

// --- live search -----------------------------------------------------------

class NetworkError : public Error {
 public:
  using Error::Error;
};

class HttpStatusError : public Error {
 public:
  HttpStatusError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class PayloadError : public Error {
 public:
  using Error::Error;
};

struct OnlineHit {
  std::string anumber;
  std::string name;
};

struct OnlineOptions {
  std::string endpoint = "https://oeis.org/search";
  int retries = 2;  ///< extra attempts after the first, for network and 5xx failures
  std::chrono::milliseconds delay{1000};
  std::chrono::seconds timeout{20};
};

/// The endpoint from TAUSEQ_OEIS_ENDPOINT when set, else the default.
OnlineOptions online_options_from_env();

/// Parses either the bare-array or the {"results": [...]} search payload.
/// Throws PayloadError.
std::vector<OnlineHit> parse_search_payload(const std::string& body);

/// GET <endpoint>?q=t1,t2,...&fmt=json. Results are advisory only.
std::vector<OnlineHit> search_online(const std::vector<Integer>& terms, const OnlineOptions& options = {});

}  // namespace tauseq

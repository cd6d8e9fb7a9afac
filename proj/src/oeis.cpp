#include "tauseq/oeis.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

namespace tauseq {

namespace {

std::string read_all(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("failed to read OEIS stream");
  return data;
}

std::string gunzip(const std::string& data) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw Error("zlib initialisation failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buffer[1 << 15];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof buffer;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error("corrupt gzip data in OEIS stream");
    }
    out.append(buffer, sizeof buffer - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw Error("truncated gzip data in OEIS stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

bool is_integer_token(std::string_view s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Returns an empty string on success, else the reason the line is malformed.
std::string parse_line(std::string_view line, StrippedDb& db) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos) return "missing separator after A-number";
  const std::string anumber(line.substr(0, space));
  if (!is_anumber(anumber)) return "bad A-number '" + anumber + "'";
  std::string_view rest = line.substr(space + 1);
  if (rest.empty() || rest[0] != ',') return "missing leading comma";
  rest.remove_prefix(1);
  if (!rest.empty() && rest.back() == ',') rest.remove_suffix(1);
  if (rest.empty()) return "no terms";
  std::vector<Integer> terms;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const auto token = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!is_integer_token(token)) return "bad term '" + std::string(token) + "'";
    terms.emplace_back(std::string(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (db.entries().count(anumber)) return "duplicate entry " + anumber;
  db.add(anumber, std::move(terms));
  return {};
}

}  // namespace

bool is_anumber(std::string_view text) {
  if (text.size() != 7 || text[0] != 'A') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

void StrippedDb::add(const std::string& anumber, std::vector<Integer> terms) {
  if (!is_anumber(anumber)) throw ParseError("malformed A-number '" + anumber + "'");
  if (terms.empty()) throw ParseError(anumber + " has no terms");
  entries_[anumber] = std::move(terms);
}

StrippedDb load_stripped(std::istream& in) {
  if (!in) throw Error("unreadable OEIS stream");
  std::string data = read_all(in);
  if (data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f && static_cast<unsigned char>(data[1]) == 0x8b)
    data = gunzip(data);

  StrippedDb db;
  std::size_t number = 0, pos = 0;
  while (pos < data.size()) {
    auto end = data.find('\n', pos);
    if (end == std::string::npos) end = data.size();
    std::string_view line(data.data() + pos, end - pos);
    pos = end + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    if (auto reason = parse_line(line, db); !reason.empty()) db.report({number, reason});
  }
  return db;
}

StrippedDb load_stripped_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open OEIS database '" + path + "'");
  return load_stripped(in);
}

std::string serialize(const StrippedDb& db) {
  std::ostringstream out;
  for (const auto& [anumber, terms] : db.entries()) {
    out << anumber << " ,";
    for (const auto& t : terms) out << t.get_str() << ',';
    out << '\n';
  }
  return out.str();
}

std::vector<Match> match_sequence(const StrippedDb& db, const std::vector<Integer>& terms, const MatchPolicy& policy) {
  if (policy.min_match_terms < 4) throw std::invalid_argument("min_match_terms must be at least 4");
  auto first = terms.begin();
  if (policy.trim_leading_ones)
    while (first != terms.end() && *first == 1) ++first;
  const std::vector<Integer> query(first, terms.end());
  if (query.size() < policy.min_match_terms)
    throw QueryTooShort("query has " + std::to_string(query.size()) + " informative terms, need " +
                        std::to_string(policy.min_match_terms));

  std::vector<Match> hits;
  for (const auto& [anumber, entry] : db.entries()) {
    if (entry.size() < query.size()) continue;
    const std::size_t last = policy.allow_offset ? entry.size() - query.size() : 0;
    for (std::size_t p = 0; p <= last; ++p)
      if (std::equal(query.begin(), query.end(), entry.begin() + static_cast<std::ptrdiff_t>(p))) {
        hits.push_back({anumber, p});
        break;
      }
  }
  return hits;
}

}  // namespace tauseq

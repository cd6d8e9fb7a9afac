#include "tauseq/oeis.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace tauseq {

namespace {

struct Endpoint {
  std::string origin;  ///< scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw NetworkError("endpoint '" + url + "' has no scheme");
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw NetworkError("unsupported scheme '" + scheme + "'");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") throw NetworkError("this build has no TLS support; use an http endpoint");
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  e.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  return e;
}

std::string anumber_of(long long n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "A%06lld", n);
  return buf;
}

// Calls are spaced by the politeness delay, process-wide.
std::mutex pacing_mutex;
std::chrono::steady_clock::time_point last_call{};

}  // namespace

OnlineOptions online_options_from_env() {
  OnlineOptions options;
  if (const char* env = std::getenv("TAUSEQ_OEIS_ENDPOINT"); env && *env) options.endpoint = env;
  return options;
}

std::vector<OnlineHit> parse_search_payload(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw PayloadError(std::string("search response is not JSON: ") + e.what());
  }
  const nlohmann::json* results = &doc;
  if (doc.is_object()) {
    if (!doc.contains("results")) throw PayloadError("search response has no 'results' field");
    results = &doc["results"];
  }
  std::vector<OnlineHit> hits;
  if (results->is_null()) return hits;
  if (!results->is_array()) throw PayloadError("search results are not a list");
  for (const auto& item : *results) {
    if (!item.is_object() || !item.contains("number") || !item["number"].is_number_integer())
      throw PayloadError("search result without an integer 'number'");
    OnlineHit hit{anumber_of(item["number"].get<long long>()), ""};
    if (item.contains("name") && item["name"].is_string()) hit.name = item["name"].get<std::string>();
    hits.push_back(std::move(hit));
  }
  return hits;
}

std::vector<OnlineHit> search_online(const std::vector<Integer>& terms, const OnlineOptions& options) {
  if (terms.empty()) throw std::invalid_argument("empty search query");
  const Endpoint endpoint = split_url(options.endpoint);
  std::string q;
  for (const auto& t : terms) q += (q.empty() ? "" : ",") + t.get_str();
  const std::string target = endpoint.path + "?q=" + q + "&fmt=json";

  std::lock_guard lock(pacing_mutex);
  for (int attempt = 0;; ++attempt) {
    const auto wait = last_call + options.delay - std::chrono::steady_clock::now();
    if (last_call.time_since_epoch().count() != 0 && wait > wait.zero()) std::this_thread::sleep_for(wait);
    last_call = std::chrono::steady_clock::now();

    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_follow_location(true);
    auto res = client.Get(target);
    const bool last_attempt = attempt >= options.retries;
    if (!res) {
      if (last_attempt) throw NetworkError("request to " + endpoint.origin + " failed: " + httplib::to_string(res.error()));
      continue;
    }
    if (res->status >= 500 || res->status == 429) {
      if (last_attempt) throw HttpStatusError(res->status, "search endpoint answered HTTP " + std::to_string(res->status));
      continue;
    }
    if (res->status != 200) throw HttpStatusError(res->status, "search endpoint answered HTTP " + std::to_string(res->status));
    return parse_search_payload(res->body);
  }
}

}  // namespace tauseq

#pragma once

// Pulls in cpp-httplib; only the CLI and its tests need this header.

#include <string>

#include <httplib.h>

#include "logmatch/sequence_io.hpp"

namespace logmatch {

/// Efetch-style GET: {endpoint}?db=nuccore&id={locus}&rettype=fasta&retmode=text
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(int timeout_seconds = 20) : timeout_seconds_(timeout_seconds) {}

  FetchResponse get(const std::string& endpoint, const std::string& locus) override {
    const auto scheme_end = endpoint.find("://");
    const auto path_start =
        endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = endpoint.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : endpoint.substr(path_start);

    httplib::Params params{
        {"db", "nuccore"}, {"id", locus}, {"rettype", "fasta"}, {"retmode", "text"}};
    path = httplib::append_query_params(path, params);

    try {
      httplib::Client client(origin);
      client.set_connection_timeout(timeout_seconds_);
      client.set_read_timeout(timeout_seconds_);
      client.set_follow_location(true);
      auto result = client.Get(path);
      if (!result) return {};
      return {result->status, result->body};
    } catch (const std::exception&) {
      return {};
    }
  }

 private:
  int timeout_seconds_;
};

}  // namespace logmatch

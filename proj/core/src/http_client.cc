// Copyright 2026 The proofopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "proofopt/error.h"
#include "proofopt/generator.h"

namespace proofopt {
namespace {

bool Retryable(const httplib::Result& res) {
  if (!res) return true;  // transport error
  return res->status == 429 || res->status >= 500;
}

}  // namespace

HttpCompletionClient::HttpCompletionClient(BackendConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfig, "endpoint must be an http(s) URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/v1/chat/completions" : url.substr(path_start);
}

std::vector<std::string> HttpCompletionClient::Complete(const std::string& prompt,
                                                        const SamplingParams& params) {
  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["messages"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = params.temperature;
  body["top_p"] = params.top_p;
  body["n"] = params.n;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  for (int attempt = 0; attempt < config_.retries; ++attempt) {
    if (attempt > 0) {
      const double delay = config_.retry_backoff_s * static_cast<double>(1 << (attempt - 1));
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    httplib::Client client(scheme_host_port_);
    const auto timeout = std::chrono::duration<double>(config_.timeout_s);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    auto res = client.Post(path_, headers, payload, "application/json");
    if (res && res->status == 200) {
      try {
        const auto reply = nlohmann::json::parse(res->body);
        std::vector<std::string> out;
        for (const auto& choice : reply.at("choices")) {
          const auto& message = choice.at("message");
          out.push_back(message.value("content", std::string()));
        }
        return out;
      } catch (const nlohmann::json::exception& e) {
        // A malformed body is a content failure, not a transport one.
        throw Error(ErrorCode::kBackendUnavailable,
                    std::string("malformed completion response: ") + e.what());
      }
    }
    last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
    if (!Retryable(res)) break;
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "completion endpoint " + config_.endpoint_url + " failed: " + last_error);
}

}  // namespace proofopt

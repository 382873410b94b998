#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ontointent/backend.hpp"
#include "ontointent/errors.hpp"

namespace ontointent {

RemoteBackend::RemoteBackend(RemoteBackendConfig cfg,
                             std::unique_ptr<Tokenizer> tokenizer)
    : cfg_(std::move(cfg)), tokenizer_(std::move(tokenizer)) {
  if (!tokenizer_) throw ConfigError("remote backend needs a tokenizer");
  auto scheme_end = cfg_.url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("backend.url must include a scheme: '" + cfg_.url + "'");
  }
  auto path_start = cfg_.url.find('/', scheme_end + 3);
  scheme_host_port_ = cfg_.url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : cfg_.url.substr(path_start);
  if (cfg_.retries < 0) throw ConfigError("backend.retries must be >= 0");
}

std::string RemoteBackend::request_body(const Prompt& prompt,
                                        const BiasMap& bias) const {
  nlohmann::ordered_json body;
  body["model"] = cfg_.model;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", prompt.text}}});
  body["temperature"] = 0;
  body["max_tokens"] = cfg_.max_tokens;
  if (!bias.empty()) {
    nlohmann::ordered_json lb = nlohmann::ordered_json::object();
    for (const auto& [token, value] : bias) lb[std::to_string(token)] = value;
    body["logit_bias"] = std::move(lb);
  }
  return body.dump();
}

std::string RemoteBackend::complete(const Prompt& prompt,
                                    const BiasMap& bias) const {
  const std::string body = request_body(prompt, bias);
  httplib::Headers headers;
  if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(cfg_.retry_backoff * attempt);
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(cfg_.timeout);
    client.set_read_timeout(cfg_.timeout);
    client.set_write_timeout(cfg_.timeout);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw BackendUnavailable("HTTP " + std::to_string(res->status) + " from " +
                               scheme_host_port_ + path_);
    }
    try {
      auto doc = nlohmann::json::parse(res->body);
      return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendUnavailable(std::string("malformed response: ") + e.what());
    }
  }
  throw BackendUnavailable(last_error + " after " +
                           std::to_string(cfg_.retries + 1) + " attempt(s)");
}

}  // namespace ontointent

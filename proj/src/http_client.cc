// Copyright 2026 The tomscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomscore/http_client.h"

#include <fmt/core.h>
#include <httplib.h>

#include "tomscore/error.h"

namespace tomscore {

HttpTarget SplitUrl(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigError, fmt::format("URL without scheme: '{}'", url));
  }
  const std::size_t path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

std::string PostJson(const std::string& url, const std::string& body,
                     const HttpHeaders& headers, std::chrono::seconds timeout) {
  const HttpTarget target = SplitUrl(url);
  httplib::Client client(target.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers h;
  for (const auto& [key, value] : headers) h.emplace(key, value);
  auto res = client.Post(target.path, h, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::kIoError,
                fmt::format("POST {} failed: {}", url, httplib::to_string(res.error())));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::kIoError,
                fmt::format("POST {} returned HTTP {}", url, res->status));
  }
  return res->body;
}

}  // namespace tomscore

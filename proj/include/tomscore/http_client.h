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

#ifndef TOMSCORE_HTTP_CLIENT_H_
#define TOMSCORE_HTTP_CLIENT_H_

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace tomscore {

struct HttpTarget {
  std::string origin;  // scheme://host[:port]
  std::string path;    // Starts with '/'.
};

// Splits "http://host:8080/v1/chat" into origin and path. Throws
// Error(kConfigError) when the URL has no scheme.
HttpTarget SplitUrl(const std::string& url);

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

// POSTs a JSON body and returns the response body. Throws Error(kIoError) on
// transport failure or a non-2xx status.
std::string PostJson(const std::string& url, const std::string& body,
                     const HttpHeaders& headers = {},
                     std::chrono::seconds timeout = std::chrono::seconds(60));

}  // namespace tomscore

#endif  // TOMSCORE_HTTP_CLIENT_H_

// Copyright 2026 The poncelet-lab Authors
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


// Stateless JSON facade over the library.
#pragma once

#include <map>
#include <memory>
#include <string>

namespace poncelet {

using QueryParams = std::multimap<std::string, std::string>;

struct ApiResponse {
    int status = 200;
    std::string body;  // JSON
};

/// Routes GET /api/{family,orbit,invariants,catalog}. Pure function of its
/// arguments: 400 for a bad query, 422 when the geometry cannot be computed,
/// 404 for an unknown path.
ApiResponse handle_api(const std::string& path, const QueryParams& query);

/// $PONCELET_PORT when set to a valid port, else 8080.
int default_port();

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 0;  // 0: pick a free port
    std::string static_dir;  // optional asset bundle mounted at /
};

class Service {
public:
    explicit Service(ServiceOptions options);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds the socket. Returns the bound port; throws Error on failure.
    int bind();
    /// Blocks until stop().
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace poncelet

// Copyright 2026-present the xlrank project
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
// Helpers shared by the test binaries.

#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace xlrank::testing {

class TempDir {
 public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("xlrank-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir&
    operator=(const TempDir&) = delete;

    const std::filesystem::path&
    path() const {
        return path_;
    }

    std::filesystem::path
    operator/(const std::string& name) const {
        return path_ / name;
    }

 private:
    std::filesystem::path path_;
};

inline void
write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string
read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// A reply: HTTP status and body.
struct Reply {
    int status = 200;
    std::string body;
};

/// In-process HTTP server speaking the scorer/translator wire protocol.
/// Handlers receive the raw request body.
class StubService {
 public:
    using Handler = std::function<Reply(const std::string& body)>;

    StubService() {
        server_.Post("/v1/score", [this](const httplib::Request& req, httplib::Response& res) {
            record("/v1/score", req.body);
            respond(score_, req.body, res);
        });
        server_.Post("/v1/translate", [this](const httplib::Request& req, httplib::Response& res) {
            record("/v1/translate", req.body);
            respond(translate_, req.body, res);
        });
        server_.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
            record("/v1/health", "");
            res.set_content(healthy_ ? R"({"status":"ok"})" : R"({"status":"down"})",
                            "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubService() {
        server_.stop();
        thread_.join();
    }

    std::string
    url() const {
        return "http://127.0.0.1:" + std::to_string(port_);
    }

    void
    on_score(Handler handler) {
        std::lock_guard lock(mutex_);
        score_ = std::move(handler);
    }

    void
    on_translate(Handler handler) {
        std::lock_guard lock(mutex_);
        translate_ = std::move(handler);
    }

    void
    set_healthy(bool healthy) {
        healthy_ = healthy;
    }

    /// (path, body) of every request received, in arrival order.
    std::vector<std::pair<std::string, std::string>>
    requests() const {
        std::lock_guard lock(mutex_);
        return requests_;
    }

    std::size_t
    count(const std::string& path) const {
        std::lock_guard lock(mutex_);
        std::size_t n = 0;
        for (const auto& [p, body] : requests_) {
            n += p == path ? 1 : 0;
        }
        return n;
    }

    /// Echo scorer: every item scores (value, tokens).
    static Handler
    constant_scorer(double value, int tokens) {
        return [value, tokens](const std::string& body) {
            const auto request = nlohmann::json::parse(body);
            nlohmann::json items = nlohmann::json::array();
            for (std::size_t i = 0; i < request.at("items").size(); ++i) {
                items.push_back({{"avg_log_likelihood", value}, {"num_tokens", tokens}});
            }
            return Reply{200, nlohmann::json{{"items", items}}.dump()};
        };
    }

    /// Translator looking texts up in `table`; others pass through.
    static Handler
    mapping_translator(std::map<std::string, std::string> table) {
        return [table = std::move(table)](const std::string& body) {
            const auto request = nlohmann::json::parse(body);
            std::string text = request.at("text").get<std::string>();
            if (auto it = table.find(text); it != table.end()) {
                text = it->second;
            }
            return Reply{200, nlohmann::json{{"text", text}}.dump()};
        };
    }

 private:
    void
    record(const std::string& path, const std::string& body) {
        std::lock_guard lock(mutex_);
        requests_.emplace_back(path, body);
    }

    void
    respond(const Handler& handler, const std::string& body, httplib::Response& res) {
        Handler copy;
        {
            std::lock_guard lock(mutex_);
            copy = handler;
        }
        if (!copy) {
            res.status = 404;
            res.set_content(R"({"error":"not configured"})", "application/json");
            return;
        }
        const Reply reply = copy(body);
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    }

    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    mutable std::mutex mutex_;
    Handler score_ = constant_scorer(-1.0, 1);
    Handler translate_ = mapping_translator({});
    std::atomic<bool> healthy_{true};
    std::vector<std::pair<std::string, std::string>> requests_;
};

}  // namespace xlrank::testing

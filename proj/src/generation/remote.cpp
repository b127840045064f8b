#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oraclegen/generation.hpp"

namespace oraclegen {

namespace {

using json = nlohmann::json;

class RemoteBackend : public Backend {
public:
    explicit RemoteBackend(RemoteOptions options) : options_(std::move(options)) {
        if (options_.url.rfind("http://", 0) != 0) {
            throw Error("remote backend URL must start with http://: " + options_.url);
        }
        if (options_.retries < 0) {
            throw Error("remote backend retries must be >= 0");
        }
    }

    std::string evaluate(const PromptBundle& prompt) override { return post("/v1/evaluate", prompt); }
    std::string select(const PromptBundle& prompt) override { return post("/v1/select", prompt); }
    bool serial() const override { return false; }
    std::string describe() const override { return "remote:" + options_.url; }

private:
    std::string post(const std::string& path, const PromptBundle& prompt) const {
        json body;
        body["prompt"] = prompt.rendered;
        body["candidates"] = prompt.fields.candidates;
        body["meta"] = json::parse(prompt_meta_json(prompt.fields));
        const std::string payload = body.dump();

        httplib::Client client(options_.url);
        const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
        const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - seconds);
        client.set_connection_timeout(seconds.count(), micros.count());
        client.set_read_timeout(seconds.count(), micros.count());
        client.set_write_timeout(seconds.count(), micros.count());

        const int attempts = options_.retries + 1;
        std::string last_error;
        for (int attempt = 1; attempt <= attempts; ++attempt) {
            auto res = client.Post(path, payload, "application/json");
            if (!res) {
                last_error = httplib::to_string(res.error());
                continue;
            }
            json reply;
            try {
                reply = json::parse(res->body);
            } catch (const json::exception&) {
                throw BackendError(options_.url + path + " answered HTTP " + std::to_string(res->status) +
                                   " with a non-JSON body");
            }
            if (res->status != 200) {
                const std::string message =
                    reply.contains("error") && reply["error"].is_string() ? reply["error"].get<std::string>() : "";
                throw BackendError(options_.url + path + " answered HTTP " + std::to_string(res->status) +
                                   (message.empty() ? "" : ": " + message));
            }
            if (!reply.contains("choice") || !reply["choice"].is_string()) {
                throw BackendError(options_.url + path + " reply lacks a string 'choice'");
            }
            return reply["choice"].get<std::string>();
        }
        throw BackendUnreachable("remote backend " + options_.url + " unreachable after " + std::to_string(attempts) +
                           " attempt(s): " + last_error);
    }

    RemoteOptions options_;
};

} // namespace

std::unique_ptr<Backend> remote_backend(RemoteOptions options) {
    return std::make_unique<RemoteBackend>(std::move(options));
}

} // namespace oraclegen

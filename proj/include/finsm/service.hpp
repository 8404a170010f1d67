#pragma once

#include <map>
#include <memory>
#include <string>

#include "finsm/persistence.hpp"

namespace finsm {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON, or empty for 204
};

/// Routes the JSON API onto a MachineStore. Compute endpoints never write
/// to the store; per-id write ordering is the store's responsibility.
/// Transport-independent so it can be driven directly from tests.
class Service {
public:
  explicit Service(std::shared_ptr<MachineStore> store) : store_(std::move(store)) {}

  ApiResponse handle(const ApiRequest& req) const;

private:
  std::shared_ptr<MachineStore> store_;
};

struct ServerOptions {
  std::string host = "0.0.0.0";
  int port = 8040;
  std::string cors_origin = "*";
};

/// HTTP/1.1 front end for a Service, with CORS headers for the web client.
class HttpServer {
public:
  HttpServer(const Service& service, ServerOptions opts);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket; port 0 picks a free port. False on failure.
  bool bind();
  /// Actual bound port (valid after bind()).
  int port() const;
  /// Blocks until stop() is called from another thread.
  void run();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace finsm

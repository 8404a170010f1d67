#include <httplib.h>

#include "finsm/service.hpp"

namespace finsm {

struct HttpServer::Impl {
  const Service& service;
  ServerOptions opts;
  httplib::Server server;
  int port = -1;

  Impl(const Service& s, ServerOptions o) : service(s), opts(std::move(o)) {}
};

HttpServer::HttpServer(const Service& service, ServerOptions opts)
    : impl_(std::make_unique<Impl>(service, std::move(opts))) {
  auto& svr = impl_->server;
  svr.set_default_headers({
      {"Access-Control-Allow-Origin", impl_->opts.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });

  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest api{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) api.query.emplace(k, v);
    ApiResponse out = impl_->service.handle(api);
    res.status = out.status;
    if (!out.body.empty()) res.set_content(out.body, "application/json");
  };
  svr.Get(".*", forward);
  svr.Post(".*", forward);
  svr.Put(".*", forward);
  svr.Delete(".*", forward);
  svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() = default;

bool HttpServer::bind() {
  auto& o = impl_->opts;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
    return impl_->port > 0;
  }
  if (!impl_->server.bind_to_port(o.host, o.port)) return false;
  impl_->port = o.port;
  return true;
}

int HttpServer::port() const { return impl_->port; }

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace finsm

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "http_server.hpp"

#include <httplib.h>

namespace litkg {

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;

  explicit Impl(const Service& s) : service(s) {}

  void dispatch(const httplib::Request& in, httplib::Response& out) const {
    HttpRequest req;
    req.method = in.method;
    req.path = in.path;
    req.body = in.body;
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    const auto resp = service.handle(req);
    out.status = resp.status;
    out.set_content(resp.body, resp.content_type);
  }
};

HttpServer::HttpServer(const Service& service, std::optional<std::filesystem::path> ui_dir)
    : impl_(std::make_unique<Impl>(service)) {
  if (ui_dir) impl_->server.set_mount_point("/ui", ui_dir->string());
  auto handler = [this](const httplib::Request& in, httplib::Response& out) { impl_->dispatch(in, out); };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace litkg

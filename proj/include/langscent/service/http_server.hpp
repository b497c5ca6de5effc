#pragma once

#include <memory>
#include <string>
#include <thread>

#include "langscent/service/service.hpp"

namespace httplib {
class Server;
}

namespace langscent::service {

// Serves a Service over HTTP/1.1 on a background thread.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error{internal}.
  int start(const std::string& host, int port);
  void stop();
  int port() const { return port_; }

  // Blocks until stop() is called from another thread or a signal handler.
  void wait();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace langscent::service

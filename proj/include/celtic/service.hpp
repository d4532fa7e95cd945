#pragma once

#include <map>
#include <memory>
#include <string>

namespace celtic {

struct ServiceRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ServiceResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ServiceOptions {
  std::size_t max_sessions = 128;
  std::string default_strategy = "optimal";
};

/// Session store plus request routing. Safe to call from many threads.
class KnotService {
 public:
  explicit KnotService(ServiceOptions options = {});
  ~KnotService();
  KnotService(const KnotService&) = delete;
  KnotService& operator=(const KnotService&) = delete;

  ServiceResponse handle(const ServiceRequest& request);
  std::size_t session_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// cpp-httplib front end forwarding /api requests to a KnotService.
class HttpServer {
 public:
  explicit HttpServer(KnotService& service);
  ~HttpServer();

  /// Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace celtic

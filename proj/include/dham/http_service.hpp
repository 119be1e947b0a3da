#pragma once

#include <memory>
#include <string>

#include "dham/session.hpp"

namespace httplib {
class Server;
}

namespace dham {

/**
   HTTP front end of a SessionManager:
     POST   /games                 create, 201 + snapshot
     GET    /games/{id}            snapshot
     POST   /games/{id}/moves      {"elements": [...]}, 200 + deltas + snapshot
     GET    /games/{id}/stream     server-sent events, one "delta" event per
                                   turn after ?from=<ply> (default 0); closes
                                   when the game ends or the session is deleted
     DELETE /games/{id}            204
   Errors are {"error": message, "reason": code} with 400 (malformed),
   404 (unknown session) or 409 (illegal move).
 */
class HttpService {
 public:
  explicit HttpService(SessionManager& sessions);
  ~HttpService();

  /// Loopback hosts only; throws PreconditionError otherwise.
  static void check_host(const std::string& host);

  /// Binds to a free port and returns it.
  int bind_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  bool listen_after_bind();
  void stop();
  bool running() const;

 private:
  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace dham

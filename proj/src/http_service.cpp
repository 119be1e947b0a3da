#include "dham/http_service.hpp"

#include "httplib.h"

#include "dham/errors.hpp"

namespace dham {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& reason, const std::string& what) {
  send_json(res, status, Json{{"error", what}, {"reason", reason}});
}

/// Maps library exceptions onto status codes.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const SessionNotFound& e) {
    send_error(res, 404, "not found", e.what());
  } catch (const MoveRejected& e) {
    send_error(res, 409, e.reason(), e.what());
  } catch (const ParseError& e) {
    send_error(res, 400, "malformed", e.what());
  } catch (const Json::exception& e) {
    send_error(res, 400, "malformed", e.what());
  } catch (const DomainError& e) {
    send_error(res, 400, "domain", e.what());
  } catch (const PreconditionError& e) {
    send_error(res, 400, "precondition", e.what());
  } catch (const BudgetExceeded& e) {
    send_error(res, 400, "budget", e.what());
  }
}

Json parse_body(const httplib::Request& req) {
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw ParseError("request body is not valid JSON");
  return j;
}

}  // namespace

HttpService::HttpService(SessionManager& sessions) : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;

  srv.Post("/games", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = sessions_.create(session_config_from_json(parse_body(req)));
      send_json(res, 201, sessions_.snapshot(id));
    });
  });

  srv.Get(R"(/games/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, sessions_.snapshot(req.matches[1])); });
  });

  srv.Post(R"(/games/([^/]+)/moves)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      sessions_.snapshot(id);  // 404 before 400
      const Json body = parse_body(req);
      if (!body.is_object() || !body.contains("elements") || !body["elements"].is_array())
        throw ParseError("expected {\"elements\": [edge ids]}");
      std::vector<Element> elements;
      for (const Json& e : body["elements"]) {
        if (!e.is_number_integer()) throw ParseError("edge ids must be integers");
        elements.push_back(e.get<Element>());
      }
      send_json(res, 200, sessions_.post_moves(id, elements));
    });
  });

  srv.Delete(R"(/games/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (sessions_.remove(req.matches[1]))
      res.status = 204;
    else
      send_error(res, 404, "not found", "no session " + std::string(req.matches[1]));
  });

  srv.Get(R"(/games/([^/]+)/stream)", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    int from = 0;
    if (req.has_param("from")) {
      try {
        from = std::stoi(req.get_param_value("from"));
      } catch (const std::exception&) {
        send_error(res, 400, "malformed", "from must be an integer");
        return;
      }
    }
    try {
      sessions_.snapshot(id);
    } catch (const SessionNotFound& e) {
      send_error(res, 404, "not found", e.what());
      return;
    }
    auto last = std::make_shared<int>(from);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [this, id, last](std::size_t, httplib::DataSink& sink) {
      bool closed = false;
      std::vector<Delta> ds;
      try {
        ds = sessions_.deltas_after(id, *last, std::chrono::milliseconds(500), closed);
      } catch (const SessionNotFound&) {
        sink.write("event: closed\ndata: {}\n\n", 24);
        sink.done();
        return true;
      }
      for (const Delta& d : ds) {
        const std::string msg = "event: delta\nid: " + std::to_string(d.ply) + "\ndata: " + d.to_json().dump() + "\n\n";
        if (!sink.write(msg.data(), msg.size())) return false;
        *last = d.ply;
      }
      if (closed) {
        sink.write("event: closed\ndata: {}\n\n", 24);
        sink.done();
      } else if (ds.empty()) {
        if (!sink.write(": keepalive\n\n", 13)) return false;
      }
      return true;
    });
  });

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, 200, Json{{"ok", true}}); });
}

HttpService::~HttpService() { stop(); }

void HttpService::check_host(const std::string& host) {
  if (host != "127.0.0.1" && host != "localhost" && host != "::1")
    throw PreconditionError("the service binds to localhost only");
}

int HttpService::bind_any_port(const std::string& host) {
  check_host(host);
  return server_->bind_to_any_port(host);
}

bool HttpService::bind(const std::string& host, int port) {
  check_host(host);
  return server_->bind_to_port(host, port);
}

bool HttpService::listen_after_bind() { return server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

bool HttpService::running() const { return server_->is_running(); }

}  // namespace dham

#include "finsm/service.hpp"

#include <charconv>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "finsm/algorithms.hpp"
#include "finsm/simulation.hpp"
#include "finsm/tikz.hpp"

namespace finsm {

namespace {

using json = nlohmann::ordered_json;

struct ApiError {
  int status;
  std::string code;
  std::string message;
  json details;
};

ApiResponse reply(int status, const json& body) { return {status, body.dump() + "\n"}; }

ApiResponse error_reply(const ApiError& e) {
  json body;
  body["code"] = e.code;
  body["message"] = e.message;
  if (!e.details.is_null()) body["details"] = e.details;
  return reply(e.status, body);
}

ApiError from_library(const Error& e) {
  json details;
  details["kind"] = std::string(to_string(e.code()));
  switch (e.code()) {
    case ErrorCode::ParseError: return {400, "INVALID_JSON", e.what(), details};
    case ErrorCode::InvalidArgument: return {400, "BAD_REQUEST", e.what(), details};
    case ErrorCode::InvalidId: return {400, "INVALID_ID", e.what(), details};
    case ErrorCode::NotFound: return {404, "NOT_FOUND", e.what(), details};
    case ErrorCode::SchemaError: return {422, "SCHEMA_ERROR", e.what(), details};
    case ErrorCode::VersionError: return {422, "VERSION_ERROR", e.what(), details};
    case ErrorCode::EpsilonOnTape: return {422, "EPSILON_ON_TAPE", e.what(), details};
    case ErrorCode::AlphabetTooLarge: return {422, "ALPHABET_TOO_LARGE", e.what(), details};
    case ErrorCode::IoError: return {500, "INTERNAL", e.what(), details};
    default: return {422, "INVARIANT_ERROR", e.what(), details};
  }
}

ApiError bad_request(const std::string& msg) { return {400, "BAD_REQUEST", msg, nullptr}; }
ApiError not_found(const std::string& msg) { return {404, "NOT_FOUND", msg, nullptr}; }

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/'))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ApiError{400, "INVALID_JSON", "request body is not valid JSON", nullptr};
  return j;
}

json validation_json(const Machine& m, const ValidationError& e) {
  json j;
  j["code"] = std::string(wire_name(e.code));
  j["state"] = e.state ? json(e.state->value) : json(nullptr);
  j["stateName"] = e.state ? json(m.state_name(*e.state)) : json(nullptr);
  j["symbol"] = e.symbol ? json(*e.symbol) : json(nullptr);
  j["message"] = e.message;
  return j;
}

MachineKind parse_kind(const std::string& text) {
  if (text == "dfa") return MachineKind::DFA;
  if (text == "nfa") return MachineKind::NFA;
  throw bad_request("kind must be \"dfa\" or \"nfa\"");
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key, double fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw bad_request("query parameter '" + key + "' must be a number");
  return v;
}

std::string fresh_id(const MachineStore& store) {
  std::random_device rd;
  for (;;) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "m%08x", static_cast<unsigned>(rd()));
    if (!store.exists(buf)) return buf;
  }
}

}  // namespace

ApiResponse Service::handle(const ApiRequest& req) const {
  try {
    const auto parts = split_path(req.path);
    if (parts.empty() || parts[0] != "machines") throw not_found("no route for " + req.path);

    if (parts.size() == 1) {
      if (req.method == "GET") {
        json list = json::array();
        for (const auto& id : store_->list()) {
          try {
            list.push_back({{"id", id}, {"name", store_->load(id).name()}});
          } catch (const Error&) {
            // Unreadable files are skipped rather than failing the listing.
          }
        }
        return reply(200, list);
      }
      if (req.method == "POST") {
        json body = parse_body(req.body);
        if (!body.is_object()) throw bad_request("body must be a JSON object");
        std::optional<std::string> id;
        if (auto it = body.find("id"); it != body.end()) {
          if (!it->is_string()) throw bad_request("'id' must be a string");
          id = it->get<std::string>();
          if (!valid_machine_id(*id)) throw ApiError{400, "INVALID_ID", "invalid machine id '" + *id + "'", nullptr};
          body.erase("id");
        }
        Machine m;
        if (body.contains("formatVersion")) {
          m = deserialize(body.dump());
        } else {
          auto name = body.find("name");
          if (name == body.end() || !name->is_string()) throw bad_request("expected a machine document or {\"name\": string}");
          m = new_machine(name->get<std::string>());
        }
        if (id) {
          if (!store_->create(*id, m)) throw ApiError{409, "ID_CONFLICT", "machine '" + *id + "' already exists", nullptr};
        } else {
          do id = fresh_id(*store_);
          while (!store_->create(*id, m));
        }
        return reply(201, {{"id", *id}});
      }
      throw not_found("no route for " + req.method + " " + req.path);
    }

    const std::string& id = parts[1];
    if (!valid_machine_id(id)) throw ApiError{400, "INVALID_ID", "invalid machine id '" + id + "'", nullptr};

    if (parts.size() == 2) {
      if (req.method == "GET") return {200, serialize(store_->load(id))};
      if (req.method == "PUT") {
        Machine m = deserialize(req.body);
        store_->save(id, m);
        return reply(200, {{"id", id}});
      }
      if (req.method == "DELETE") {
        if (!store_->remove(id)) throw not_found("no machine with id '" + id + "'");
        return {204, ""};
      }
      throw not_found("no route for " + req.method + " " + req.path);
    }

    const std::string& action = parts[2];
    const Machine m = store_->load(id);

    if (parts.size() == 3 && action == "validate" && req.method == "POST") {
      auto kind_it = req.query.find("kind");
      MachineKind kind = parse_kind(kind_it == req.query.end() ? "dfa" : kind_it->second);
      if (kind == MachineKind::NFA) return reply(200, {{"ok", true}, {"kind", "nfa"}});
      auto v = validate_as_dfa(m);
      if (v.ok()) return reply(200, {{"ok", true}, {"kind", "dfa"}});
      return reply(200, {{"ok", false}, {"error", validation_json(m, *v.error)}});
    }

    if (parts.size() == 3 && action == "run" && req.method == "POST") {
      json body = parse_body(req.body);
      if (!body.is_object()) throw bad_request("body must be a JSON object");
      auto tape_it = body.find("tape");
      if (tape_it == body.end() || !tape_it->is_array()) throw bad_request("'tape' must be an array of symbols");
      Word tape;
      for (const auto& s : *tape_it) {
        if (!s.is_string()) throw bad_request("'tape' must be an array of symbols");
        tape.push_back(s.get<std::string>());
      }
      MachineKind kind = MachineKind::NFA;
      if (auto k = body.find("kind"); k != body.end()) {
        if (!k->is_string()) throw bad_request("'kind' must be a string");
        kind = parse_kind(k->get<std::string>());
      }
      if (kind == MachineKind::DFA) {
        auto v = validate_as_dfa(m);
        if (!v.ok()) return reply(200, {{"ok", false}, {"error", validation_json(m, *v.error)}});
      }
      auto result = run_tape(m, tape);
      json trace = json::array();
      for (const auto& set : result.trace) {
        json ids = json::array();
        for (StateId q : set) ids.push_back(q.value);
        trace.push_back(std::move(ids));
      }
      return reply(200, {{"ok", true}, {"accepted", result.accepted}, {"trace", std::move(trace)}});
    }

    if (parts.size() == 3 && action == "definition" && req.method == "GET")
      return reply(200, {{"text", format_definition(m)}});

    if (parts.size() == 3 && action == "alphabet" && req.method == "GET") {
      auto sigma = infer_alphabet(m);
      json keys = json::object();
      for (const auto& [key, sym] : key_mapping(sigma)) keys[std::string(1, key)] = sym;
      return reply(200, {{"alphabet", sigma}, {"keys", std::move(keys)}});
    }

    if (parts.size() == 4 && action == "export" && parts[3] == "tikz" && req.method == "GET") {
      ExportOptions opts;
      if (auto it = req.query.find("nonce"); it != req.query.end()) opts.nonce = it->second;
      opts.scale = query_number(req.query, "scale", 1.0);
      opts.grid_snap = query_number(req.query, "grid", 0.0);
      auto doc = export_tikz(m, opts);
      json names = json::object();
      for (const auto& [q, name] : doc.node_names) names[std::to_string(q.value)] = name;
      return reply(200, {{"source", doc.source}, {"nodeNames", std::move(names)}});
    }

    throw not_found("no route for " + req.method + " " + req.path);
  } catch (const ApiError& e) {
    return error_reply(e);
  } catch (const Error& e) {
    return error_reply(from_library(e));
  } catch (const std::exception& e) {
    return error_reply({500, "INTERNAL", e.what(), nullptr});
  }
}

}  // namespace finsm

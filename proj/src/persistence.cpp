#include "finsm/persistence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace finsm {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

// Ids beyond this would overflow the allocation cursor.
constexpr std::uint64_t kMaxId = std::numeric_limits<std::uint32_t>::max() - 1;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing field '" + key + "'");
  return *it;
}

std::uint32_t id_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > kMaxId)
    schema(where + ": '" + key + "' must be a non-negative integer id");
  return static_cast<std::uint32_t>(v.get<std::uint64_t>());
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number() || !std::isfinite(v.get<double>())) schema(where + ": '" + key + "' must be a finite number");
  return v.get<double>();
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) schema(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_boolean()) schema(where + ": '" + key + "' must be a boolean");
  return v.get<bool>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) schema(where + ": '" + key + "' must be an array");
  return v;
}

// Library errors raised while rebuilding the machine are invariant violations
// of the document.
template <class F>
auto as_invariant(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantError, e.what());
  }
}

}  // namespace

std::string serialize(const Machine& m) {
  ordered_json doc;
  doc["formatVersion"] = kFormatVersion;
  doc["name"] = m.name();

  auto states = ordered_json::array();
  for (const auto& [id, st] : m.states()) {
    ordered_json s;
    s["id"] = id.value;
    s["name"] = st.name;
    s["x"] = st.pos.x;
    s["y"] = st.pos.y;
    s["isStart"] = m.is_start(id);
    s["isFinal"] = m.is_final(id);
    states.push_back(std::move(s));
  }
  doc["states"] = std::move(states);

  auto transitions = ordered_json::array();
  for (const auto& [id, t] : m.transitions()) {
    ordered_json j;
    j["id"] = id.value;
    j["from"] = t.from.value;
    j["to"] = t.to.value;
    j["symbols"] = t.label.symbols();
    j["curve"] = t.curve;
    transitions.push_back(std::move(j));
  }
  doc["transitions"] = std::move(transitions);

  // Positions and curves are finite by construction, so dump never sees NaN.
  return doc.dump(2) + "\n";
}

Machine deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }

  if (!doc.is_object()) schema("document must be a JSON object");
  const json& version = field(doc, "formatVersion", "document");
  if (!version.is_number_integer()) schema("document: 'formatVersion' must be an integer");
  if (version.get<std::int64_t>() != kFormatVersion)
    throw Error(ErrorCode::VersionError, "unsupported formatVersion " + version.dump());

  Machine m(string_field(doc, "name", "document"));

  const json& states = array_field(doc, "states", "document");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const json& s = states[i];
    if (!s.is_object()) schema(where + " must be an object");
    State st{StateId{id_field(s, "id", where)}, string_field(s, "name", where),
             Position{number_field(s, "x", where), number_field(s, "y", where)}};
    bool is_start = bool_field(s, "isStart", where);
    bool is_final = bool_field(s, "isFinal", where);
    StateId id = st.id;
    m = as_invariant([&] { return insert_state(m, std::move(st)); });
    m = set_state_flags(m, id, is_start, is_final);
  }

  const json& transitions = array_field(doc, "transitions", "document");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const json& t = transitions[i];
    if (!t.is_object()) schema(where + " must be an object");
    TransitionId id{id_field(t, "id", where)};
    StateId from{id_field(t, "from", where)};
    StateId to{id_field(t, "to", where)};
    double curve = number_field(t, "curve", where);

    const json& symbols = array_field(t, "symbols", where);
    std::set<Symbol> label;
    for (const auto& s : symbols) {
      if (!s.is_string()) schema(where + ": symbols must be strings");
      label.insert(s.get<std::string>());
    }
    m = as_invariant([&] { return insert_transition(m, Transition{id, from, to, TransitionLabel(label), curve}); });
  }
  return m;
}

bool valid_machine_id(std::string_view id) {
  static const std::regex pattern("^[A-Za-z0-9_-]{1,64}$");
  return std::regex_match(id.begin(), id.end(), pattern);
}

namespace fs = std::filesystem;

FileStore::FileStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw Error(ErrorCode::IoError, "cannot use data directory " + dir_.string() + ": " + ec.message());
}

fs::path FileStore::path_for(const std::string& id) const {
  if (!valid_machine_id(id)) throw Error(ErrorCode::InvalidId, "invalid machine id '" + id + "'");
  return dir_ / (id + ".json");
}

std::mutex& FileStore::lock_for(const std::string& id) {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void FileStore::write_atomically(const std::string& id, const std::string& text) {
  static std::atomic<std::uint64_t> counter{0};
  const fs::path target = path_for(id);
  std::ostringstream tmp_name;
  tmp_name << "." << id << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot replace " + target.string());
  }
}

void FileStore::save(const std::string& id, const Machine& m) {
  path_for(id);
  std::lock_guard guard(lock_for(id));
  write_atomically(id, serialize(m));
}

bool FileStore::create(const std::string& id, const Machine& m) {
  const fs::path target = path_for(id);
  std::lock_guard guard(lock_for(id));
  if (fs::exists(target)) return false;
  write_atomically(id, serialize(m));
  return true;
}

Machine FileStore::load(const std::string& id) const {
  const fs::path target = path_for(id);
  std::ifstream in(target, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "no machine with id '" + id + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

bool FileStore::exists(const std::string& id) const { return valid_machine_id(id) && fs::exists(path_for(id)); }

std::vector<std::string> FileStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::string stem = entry.path().stem().string();
    if (valid_machine_id(stem)) ids.push_back(std::move(stem));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool FileStore::remove(const std::string& id) {
  const fs::path target = path_for(id);
  std::lock_guard guard(lock_for(id));
  std::error_code ec;
  bool removed = fs::remove(target, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot delete " + target.string());
  return removed;
}

}  // namespace finsm

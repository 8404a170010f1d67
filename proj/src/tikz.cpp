#include "finsm/tikz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

namespace finsm {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

// splitmix64 finalizer; FNV alone leaves the low digits poorly mixed.
std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string coord(double v) {
  v = std::round(v * 1000.0) / 1000.0;
  if (v == 0.0) v = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label_text(const TransitionLabel& label) {
  std::string out;
  for (const auto& s : label.symbols()) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

std::string hash_node_name(StateId state, std::string_view nonce, std::uint32_t attempt) {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, nonce);
  fnv_mix(h, std::string_view("\0", 1));
  fnv_mix(h, std::to_string(state.value));
  if (attempt > 0) {
    fnv_mix(h, std::string_view("\0", 1));
    fnv_mix(h, std::to_string(attempt));
  }
  h = avalanche(h);

  std::string name(8, 'a');
  for (auto& c : name) {
    c = static_cast<char>('a' + h % 26);
    h /= 26;
  }
  if (attempt > 0) name += std::to_string(attempt);
  return name;
}

Position snap_to_grid(Position pos, double grid) {
  if (!(grid > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid size must be positive");
  // std::round already rounds halves away from zero.
  return {std::round(pos.x / grid) * grid, std::round(pos.y / grid) * grid};
}

int bend_degrees(double curve) {
  double angle = std::clamp(kBendDegreesPerUnit * curve, -kMaxBendDegrees, kMaxBendDegrees);
  return static_cast<int>(std::lround(angle));
}

std::string random_nonce() {
  std::random_device rd;
  std::uint64_t v = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

TikzDocument export_tikz(const Machine& m, const ExportOptions& opts) {
  if (!(opts.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  if (opts.grid_snap < 0.0) throw Error(ErrorCode::InvalidArgument, "grid size must not be negative");

  const std::string nonce = opts.nonce ? *opts.nonce : random_nonce();

  TikzDocument doc;
  doc.scale = opts.scale;
  std::set<std::string> taken;
  for (const auto& [id, st] : m.states()) {
    std::uint32_t attempt = 0;
    std::string name = hash_node_name(id, nonce);
    while (!taken.insert(name).second) name = hash_node_name(id, nonce, ++attempt);
    doc.node_names.emplace(id, std::move(name));
  }

  std::ostringstream out;
  out << "\\begin{tikzpicture}[>=stealth, auto, semithick,\n"
         "    fsm state/.style={circle, draw, minimum size=8mm, inner sep=1pt},\n"
         "    fsm accepting/.style={double, double distance=1.2pt}]\n";

  for (const auto& [id, st] : m.states()) {
    Position p = opts.grid_snap > 0.0 ? snap_to_grid(st.pos, opts.grid_snap) : st.pos;
    // Canvas y grows downwards, TikZ y upwards.
    out << "  \\node[fsm state" << (m.is_final(id) ? ", fsm accepting" : "") << "] (" << doc.node_names.at(id)
        << ") at (" << coord(p.x * opts.scale) << ", " << coord(-p.y * opts.scale) << ") {$" << st.name << "$};\n";
  }

  for (StateId q : m.start())
    out << "  \\draw[<-] (" << doc.node_names.at(q) << ".west) -- ++(-0.8, 0);\n";

  for (const auto& [id, t] : m.transitions()) {
    const auto& from = doc.node_names.at(t.from);
    const auto& to = doc.node_names.at(t.to);
    std::string shape;
    if (t.from == t.to) {
      shape = t.curve < 0.0 ? "[loop below]" : "[loop above]";
    } else if (int deg = bend_degrees(t.curve); deg != 0) {
      shape = std::string(deg > 0 ? "[bend left=" : "[bend right=") + std::to_string(std::abs(deg)) + "]";
    }
    out << "  \\path[->] (" << from << ") edge" << shape << " node {$" << label_text(t.label) << "$} (" << to
        << ");\n";
  }

  out << "\\end{tikzpicture}\n";
  doc.source = out.str();
  return doc;
}

}  // namespace finsm

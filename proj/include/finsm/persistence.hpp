#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finsm/machine.hpp"

namespace finsm {

inline constexpr int kFormatVersion = 1;

/// Canonical JSON document: states and transitions sorted by id, symbols
/// sorted, fixed key order, two-space indent, trailing LF.
std::string serialize(const Machine& m);

/// Throws ParseError, SchemaError, InvariantError or VersionError. Invalid
/// documents are rejected, never repaired.
Machine deserialize(std::string_view text);

/// ^[A-Za-z0-9_-]{1,64}$
bool valid_machine_id(std::string_view id);

class MachineStore {
public:
  virtual ~MachineStore() = default;

  /// Insert or replace.
  virtual void save(const std::string& id, const Machine& m) = 0;
  /// Insert only; false if the id is already taken.
  virtual bool create(const std::string& id, const Machine& m) = 0;
  /// Throws NotFound.
  virtual Machine load(const std::string& id) const = 0;
  virtual bool exists(const std::string& id) const = 0;
  /// Sorted.
  virtual std::vector<std::string> list() const = 0;
  /// Idempotent; returns whether something was removed.
  virtual bool remove(const std::string& id) = 0;
};

/// One `<id>.json` file per machine under a data directory. Writes go to a
/// temporary file that is renamed over the target, and are serialized per id.
class FileStore final : public MachineStore {
public:
  /// Creates the directory if needed. Throws IoError.
  explicit FileStore(std::filesystem::path dir);

  const std::filesystem::path& directory() const { return dir_; }

  void save(const std::string& id, const Machine& m) override;
  bool create(const std::string& id, const Machine& m) override;
  Machine load(const std::string& id) const override;
  bool exists(const std::string& id) const override;
  std::vector<std::string> list() const override;
  bool remove(const std::string& id) override;

private:
  std::filesystem::path path_for(const std::string& id) const;
  std::mutex& lock_for(const std::string& id);
  void write_atomically(const std::string& id, const std::string& text);

  std::filesystem::path dir_;
  std::mutex locks_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

}  // namespace finsm

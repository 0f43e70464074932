#include "revspam/ontology.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "revspam/error.h"
#include "revspam/text.h"

namespace revspam {
namespace {

const std::regex &IdentifierPattern() {
  static const std::regex pattern("[a-z0-9_.]+");
  return pattern;
}

bool IsIdentifier(std::string_view s) {
  return std::regex_match(s.begin(), s.end(), IdentifierPattern());
}

std::string_view ClassRoleKeyword(ClassRole role) {
  switch (role) {
    case ClassRole::kComponentFeature: return "component";
    case ClassRole::kStyle: return "style";
    case ClassRole::kOrigin: return "origin";
    case ClassRole::kPopularName: return "popularname";
    case ClassRole::kNone: break;
  }
  return "";
}

std::optional<ClassRole> ParseRoleKeyword(std::string_view s) {
  if (s == "component") return ClassRole::kComponentFeature;
  if (s == "style") return ClassRole::kStyle;
  if (s == "origin") return ClassRole::kOrigin;
  if (s == "popularname") return ClassRole::kPopularName;
  return std::nullopt;
}

int WordCount(std::string_view s) {
  if (s.empty()) return 0;
  return static_cast<int>(std::count(s.begin(), s.end(), ' ')) + 1;
}

struct Field {
  std::string text;
  bool quoted = false;
};

// Splits a record line into whitespace-separated fields; a field may be a
// double-quoted string. Comments start at a '#' outside quotes.
std::vector<Field> SplitFields(std::string_view line, int line_no) {
  std::vector<Field> fields;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    Field field;
    if (line[i] == '"') {
      std::size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::kSyntaxError, std::string(line),
                    "unterminated quoted surface", line_no);
      }
      field.text = std::string(line.substr(i + 1, close - i - 1));
      field.quoted = true;
      i = close + 1;
      if (i < line.size() && !is_space(line[i]) && line[i] != '#') {
        throw Error(ErrorCode::kSyntaxError, std::string(line),
                    "text after closing quote", line_no);
      }
    } else {
      std::size_t end = i;
      while (end < line.size() && !is_space(line[end]) && line[end] != '#') {
        if (line[end] == '"') {
          throw Error(ErrorCode::kSyntaxError, std::string(line),
                      "stray quote", line_no);
        }
        ++end;
      }
      field.text = std::string(line.substr(i, end - i));
      i = end;
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

// Parses `key=value` fields after the positional ones.
std::map<std::string, std::string> ParseKeys(
    const std::vector<Field> &fields, std::size_t first,
    const std::set<std::string> &allowed, int line_no) {
  std::map<std::string, std::string> keys;
  for (std::size_t i = first; i < fields.size(); ++i) {
    const Field &f = fields[i];
    std::size_t eq = f.text.find('=');
    if (f.quoted || eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kSyntaxError, f.text,
                  "expected key=value, got '" + f.text + "'", line_no);
    }
    std::string key = f.text.substr(0, eq);
    if (!allowed.contains(key)) {
      throw Error(ErrorCode::kSyntaxError, key, "unknown key '" + key + "'",
                  line_no);
    }
    if (!keys.emplace(key, f.text.substr(eq + 1)).second) {
      throw Error(ErrorCode::kSyntaxError, key, "repeated key '" + key + "'",
                  line_no);
    }
  }
  return keys;
}

std::string RequireIdentifier(const std::string &value, std::string_view what,
                              int line_no) {
  if (!IsIdentifier(value)) {
    throw Error(ErrorCode::kSyntaxError, value,
                "bad " + std::string(what) + " identifier '" + value + "'",
                line_no);
  }
  return value;
}

}  // namespace

std::string_view RoleName(EntityRole role) {
  switch (role) {
    case EntityRole::kComponentFeature: return "ComponentFeature";
    case EntityRole::kStyle: return "Style";
    case EntityRole::kOrigin: return "Origin";
    case EntityRole::kPopularName: return "PopularName";
    case EntityRole::kForeign: return "Foreign";
    case EntityRole::kUnknown: return "Unknown";
  }
  return "Unknown";
}

EntityRole ToEntityRole(ClassRole role) {
  switch (role) {
    case ClassRole::kComponentFeature: return EntityRole::kComponentFeature;
    case ClassRole::kStyle: return EntityRole::kStyle;
    case ClassRole::kOrigin: return EntityRole::kOrigin;
    case ClassRole::kPopularName: return EntityRole::kPopularName;
    case ClassRole::kNone: break;
  }
  return EntityRole::kUnknown;
}

Ontology::Ontology(std::vector<OntologyClass> classes,
                   std::map<std::string, std::string> branches,
                   std::vector<OntologyEntity> entities)
    : classes_(std::move(classes)),
      branches_(std::move(branches)),
      entities_(std::move(entities)) {
  std::sort(classes_.begin(), classes_.end());
  for (OntologyEntity &e : entities_) e.surface = Normalize(e.surface);
  std::sort(entities_.begin(), entities_.end());
  Validate();
}

void Ontology::Validate() {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (!class_index_.emplace(classes_[i].id, i).second) {
      throw Error(ErrorCode::kSyntaxError, classes_[i].id,
                  "duplicate class '" + classes_[i].id + "'");
    }
  }
  for (const OntologyClass &c : classes_) {
    if (!c.parent.empty() && !class_index_.contains(c.parent)) {
      throw Error(ErrorCode::kUnknownParent, c.parent,
                  "class '" + c.id + "' has unknown parent '" + c.parent + "'");
    }
  }
  // Cycle check walks each chain; a chain longer than the class count loops.
  for (const OntologyClass &c : classes_) {
    std::set<std::string_view> seen;
    const OntologyClass *cur = &c;
    while (!cur->parent.empty()) {
      if (!seen.insert(cur->id).second) {
        throw Error(ErrorCode::kCycleDetected, cur->id,
                    "class '" + cur->id + "' is its own ancestor");
      }
      cur = &classes_[class_index_.at(cur->parent)];
    }
  }
  std::vector<std::string_view> roots;
  for (const OntologyClass &c : classes_) {
    if (c.parent.empty()) roots.push_back(c.id);
  }
  if (roots.size() != 1 || roots.front() != kRoot) {
    throw Error(ErrorCode::kInvalidOntology, std::string(kRoot),
                "expected exactly one root class named Thing");
  }

  std::map<std::string, std::string, std::less<>> category_of_class;
  for (const auto &[category, class_id] : branches_) {
    if (!class_index_.contains(class_id)) {
      throw Error(ErrorCode::kUnknownClass, class_id,
                  "branch '" + category + "' names unknown class '" +
                      class_id + "'");
    }
    if (!category_of_class.emplace(class_id, category).second) {
      throw Error(ErrorCode::kInvalidOntology, class_id,
                  "class '" + class_id + "' registered as two branches");
    }
  }

  for (const OntologyClass &c : classes_) {
    std::optional<std::string> branch;
    ClassRole role = ClassRole::kNone;
    bool strictly_below = false;
    for (const OntologyClass *cur = &c;;) {
      if (role == ClassRole::kNone) role = cur->role;
      if (auto it = category_of_class.find(cur->id);
          it != category_of_class.end()) {
        if (branch) {
          throw Error(ErrorCode::kInvalidOntology, c.id,
                      "branch classes may not nest (class '" + c.id + "')");
        }
        branch = it->second;
        strictly_below = cur != &c;
        if (c.role != ClassRole::kNone && !strictly_below) {
          throw Error(ErrorCode::kInvalidOntology, c.id,
                      "branch class '" + c.id + "' may not carry a role");
        }
      }
      if (cur->parent.empty()) break;
      cur = &classes_[class_index_.at(cur->parent)];
    }
    if (c.role != ClassRole::kNone && !branch) {
      throw Error(ErrorCode::kInvalidOntology, c.id,
                  "role on class '" + c.id + "' outside any product branch");
    }
    // Roles inherit only inside a branch; the branch class itself has none.
    if (!branch) role = ClassRole::kNone;
    effective_role_.emplace(c.id, role);
    if (branch) branch_of_.emplace(c.id, *branch);
  }

  for (std::size_t i = 0; i < entities_.size(); ++i) {
    const OntologyEntity &e = entities_[i];
    if (e.surface.empty()) {
      throw Error(ErrorCode::kSyntaxError, e.class_id, "empty entity surface");
    }
    if (i > 0 && entities_[i - 1] == e) {
      throw Error(ErrorCode::kDuplicateEntity, e.surface,
                  "entity '" + e.surface + "' repeated in class '" +
                      e.class_id + "'");
    }
    if (!class_index_.contains(e.class_id)) {
      throw Error(ErrorCode::kUnknownClass, e.class_id,
                  "entity '" + e.surface + "' names unknown class '" +
                      e.class_id + "'");
    }
    ClassRole role = effective_role_.at(e.class_id);
    if (role == ClassRole::kNone) {
      throw Error(ErrorCode::kInvalidOntology, e.class_id,
                  "entity '" + e.surface + "' sits in class '" + e.class_id +
                      "' which has no role");
    }
    EntityRole entity_role = ToEntityRole(role);
    auto &per_category = surface_index_[e.surface];
    auto [it, inserted] =
        per_category.emplace(branch_of_.at(e.class_id), entity_role);
    if (!inserted) it->second = std::min(it->second, entity_role);
    max_entity_words_ = std::max(max_entity_words_, WordCount(e.surface));
  }
}

const OntologyClass *Ontology::FindClass(std::string_view id) const {
  auto it = class_index_.find(id);
  return it == class_index_.end() ? nullptr : &classes_[it->second];
}

bool Ontology::HasCategory(std::string_view category) const {
  return branches_.contains(std::string(category));
}

const std::string &Ontology::CategoryOrThrow(std::string_view category) const {
  auto it = branches_.find(std::string(category));
  if (it == branches_.end()) {
    throw Error(ErrorCode::kUnknownCategory, std::string(category),
                "no product branch '" + std::string(category) + "'");
  }
  return it->first;
}

ClassRole Ontology::EffectiveRole(std::string_view class_id) const {
  auto it = effective_role_.find(class_id);
  return it == effective_role_.end() ? ClassRole::kNone : it->second;
}

std::optional<std::string> Ontology::BranchOf(std::string_view class_id) const {
  auto it = branch_of_.find(class_id);
  if (it == branch_of_.end()) return std::nullopt;
  return it->second;
}

std::set<std::pair<std::string, EntityRole>> Ontology::EntitiesFor(
    std::string_view category) const {
  const std::string &cat = CategoryOrThrow(category);
  std::set<std::pair<std::string, EntityRole>> out;
  for (const OntologyEntity &e : entities_) {
    if (branch_of_.at(e.class_id) != cat) continue;
    out.emplace(e.surface, ToEntityRole(effective_role_.at(e.class_id)));
  }
  return out;
}

EntityMatch Ontology::Match(std::string_view category,
                            std::string_view surface) const {
  const std::string &cat = CategoryOrThrow(category);
  auto it = surface_index_.find(surface);
  if (it == surface_index_.end()) return {};
  if (auto own = it->second.find(cat); own != it->second.end()) {
    return {own->second, own->second};
  }
  // Foreign: report the native role from the first other branch by name.
  return {EntityRole::kForeign, it->second.begin()->second};
}

EntityRole Ontology::Classify(std::string_view category,
                              std::string_view surface) const {
  return Match(category, surface).role;
}

bool operator==(const Ontology &a, const Ontology &b) {
  return a.classes_ == b.classes_ && a.branches_ == b.branches_ &&
         a.entities_ == b.entities_;
}

Ontology ParseOntology(std::string_view text) {
  std::vector<OntologyClass> classes;
  std::map<std::string, std::string> branches;
  std::vector<OntologyEntity> entities;
  std::map<std::string, int> class_lines;
  std::set<std::pair<std::string, std::string>> entity_keys;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    std::vector<Field> fields = SplitFields(line, line_no);
    if (fields.empty()) continue;
    const Field &kind = fields[0];
    if (kind.quoted || fields.size() < 2 || fields[1].text.empty()) {
      throw Error(ErrorCode::kSyntaxError, std::string(line),
                  "malformed record", line_no);
    }

    if (kind.text == "class") {
      if (fields[1].quoted) {
        throw Error(ErrorCode::kSyntaxError, fields[1].text,
                    "class id may not be quoted", line_no);
      }
      OntologyClass c;
      // "Thing" is the one identifier outside [a-z0-9_.]; it names the root.
      c.id = fields[1].text == Ontology::kRoot
                 ? fields[1].text
                 : RequireIdentifier(fields[1].text, "class", line_no);
      auto keys = ParseKeys(fields, 2, {"parent", "role"}, line_no);
      if (!keys.contains("parent")) {
        throw Error(ErrorCode::kSyntaxError, c.id, "class needs parent=",
                    line_no);
      }
      const std::string &parent = keys["parent"];
      if (parent != "-") {
        c.parent = parent == Ontology::kRoot
                       ? parent
                       : RequireIdentifier(parent, "parent", line_no);
      }
      if (auto it = keys.find("role"); it != keys.end()) {
        auto role = ParseRoleKeyword(it->second);
        if (!role) {
          throw Error(ErrorCode::kSyntaxError, it->second,
                      "unknown role '" + it->second + "'", line_no);
        }
        c.role = *role;
      }
      if (!class_lines.emplace(c.id, line_no).second) {
        throw Error(ErrorCode::kSyntaxError, c.id,
                    "duplicate class '" + c.id + "'", line_no);
      }
      classes.push_back(std::move(c));
    } else if (kind.text == "branch") {
      if (fields[1].quoted) {
        throw Error(ErrorCode::kSyntaxError, fields[1].text,
                    "category may not be quoted", line_no);
      }
      std::string category = RequireIdentifier(fields[1].text, "category",
                                               line_no);
      auto keys = ParseKeys(fields, 2, {"class"}, line_no);
      if (!keys.contains("class")) {
        throw Error(ErrorCode::kSyntaxError, category, "branch needs class=",
                    line_no);
      }
      std::string class_id = RequireIdentifier(keys["class"], "class", line_no);
      if (!branches.emplace(category, class_id).second) {
        throw Error(ErrorCode::kSyntaxError, category,
                    "duplicate branch '" + category + "'", line_no);
      }
    } else if (kind.text == "entity") {
      const Field &surface = fields[1];
      bool has_space = surface.text.find_first_of(" \t") != std::string::npos;
      if (surface.quoted != has_space) {
        throw Error(ErrorCode::kSyntaxError, surface.text,
                    has_space ? "multi-word surface must be quoted"
                              : "single-word surface must not be quoted",
                    line_no);
      }
      auto keys = ParseKeys(fields, 2, {"class"}, line_no);
      if (!keys.contains("class")) {
        throw Error(ErrorCode::kSyntaxError, surface.text,
                    "entity needs class=", line_no);
      }
      OntologyEntity e{Normalize(surface.text),
                       RequireIdentifier(keys["class"], "class", line_no)};
      if (e.surface.empty()) {
        throw Error(ErrorCode::kSyntaxError, surface.text,
                    "empty entity surface", line_no);
      }
      if (!entity_keys.emplace(e.surface, e.class_id).second) {
        throw Error(ErrorCode::kDuplicateEntity, e.surface,
                    "entity '" + e.surface + "' repeated in class '" +
                        e.class_id + "'",
                    line_no);
      }
      entities.push_back(std::move(e));
    } else {
      throw Error(ErrorCode::kSyntaxError, kind.text,
                  "unknown record kind '" + kind.text + "'", line_no);
    }
  }
  return Ontology(std::move(classes), std::move(branches), std::move(entities));
}

Ontology LoadOntology(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, path.string(),
                "cannot open ontology file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseOntology(buffer.str());
}

std::string SerializeOntology(const Ontology &ontology) {
  std::ostringstream out;
  out << "# classes=" << ontology.classes().size()
      << " entities=" << ontology.entities().size() << "\n";
  for (const OntologyClass &c : ontology.classes()) {
    out << "class " << c.id << " parent="
        << (c.parent.empty() ? std::string("-") : c.parent);
    if (c.role != ClassRole::kNone) out << " role=" << ClassRoleKeyword(c.role);
    out << "\n";
  }
  for (const auto &[category, class_id] : ontology.branches()) {
    out << "branch " << category << " class=" << class_id << "\n";
  }
  for (const OntologyEntity &e : ontology.entities()) {
    out << "entity ";
    if (e.surface.find(' ') != std::string::npos) {
      out << '"' << e.surface << '"';
    } else {
      out << e.surface;
    }
    out << " class=" << e.class_id << "\n";
  }
  return out.str();
}

}  // namespace revspam

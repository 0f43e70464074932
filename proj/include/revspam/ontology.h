#ifndef REVSPAM_ONTOLOGY_H_
#define REVSPAM_ONTOLOGY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revspam {

// Role declared on an ontology class. kNone classes inherit from the nearest
// ancestor that declares one.
enum class ClassRole { kNone, kComponentFeature, kStyle, kOrigin, kPopularName };

// Role of a surface relative to the product branch under review.
enum class EntityRole {
  kComponentFeature,
  kStyle,
  kOrigin,
  kPopularName,
  kForeign,  // matched only under some other branch
  kUnknown,  // not in the ontology at all
};

std::string_view RoleName(EntityRole role);
EntityRole ToEntityRole(ClassRole role);

struct OntologyClass {
  std::string id;
  std::string parent;  // empty for the root
  ClassRole role = ClassRole::kNone;

  friend auto operator<=>(const OntologyClass &, const OntologyClass &) =
      default;
};

struct OntologyEntity {
  std::string surface;  // normalized
  std::string class_id;

  friend auto operator<=>(const OntologyEntity &, const OntologyEntity &) =
      default;
};

// Result of looking a surface up inside one branch.
struct EntityMatch {
  EntityRole role = EntityRole::kUnknown;
  // Role the entity carries in the branch where it was found; equals `role`
  // unless `role` is kForeign. kUnknown when nothing matched.
  EntityRole native_role = EntityRole::kUnknown;
};

// Immutable product-knowledge ontology: a class tree rooted at "Thing",
// product branches (category -> class id) and role-tagged entity surfaces.
class Ontology {
 public:
  static constexpr std::string_view kRoot = "Thing";

  // Validates and indexes the records. Throws Error on any violation.
  Ontology(std::vector<OntologyClass> classes,
           std::map<std::string, std::string> branches,
           std::vector<OntologyEntity> entities);

  const std::vector<OntologyClass> &classes() const { return classes_; }
  const std::vector<OntologyEntity> &entities() const { return entities_; }
  const std::map<std::string, std::string> &branches() const {
    return branches_;
  }

  const OntologyClass *FindClass(std::string_view id) const;
  bool HasCategory(std::string_view category) const;

  // Role inherited from the nearest role-tagged ancestor (or the class itself).
  ClassRole EffectiveRole(std::string_view class_id) const;
  // Category whose branch class is an ancestor-or-self of class_id.
  std::optional<std::string> BranchOf(std::string_view class_id) const;

  // Every entity in the branch with its inherited role. Throws UnknownCategory.
  std::set<std::pair<std::string, EntityRole>> EntitiesFor(
      std::string_view category) const;

  // `surface` must already be normalized. Throws UnknownCategory.
  EntityRole Classify(std::string_view category, std::string_view surface) const;
  EntityMatch Match(std::string_view category, std::string_view surface) const;

  // Longest entity surface in words; bounds n-gram lookups.
  int max_entity_words() const { return max_entity_words_; }

  // Order-insensitive equality of the record sets.
  friend bool operator==(const Ontology &a, const Ontology &b);

 private:
  void Validate();
  const std::string &CategoryOrThrow(std::string_view category) const;

  std::vector<OntologyClass> classes_;      // sorted by id
  std::map<std::string, std::string> branches_;
  std::vector<OntologyEntity> entities_;    // sorted by (surface, class)
  std::map<std::string, std::size_t, std::less<>> class_index_;
  std::map<std::string, ClassRole, std::less<>> effective_role_;
  std::map<std::string, std::string, std::less<>> branch_of_;
  // surface -> category -> best role in that category
  std::map<std::string, std::map<std::string, EntityRole>, std::less<>>
      surface_index_;
  int max_entity_words_ = 0;
};

// Parses the line-based ontology format; errors carry 1-based line numbers.
Ontology ParseOntology(std::string_view text);
Ontology LoadOntology(const std::filesystem::path &path);

// Canonical text form; ParseOntology(SerializeOntology(o)) == o.
std::string SerializeOntology(const Ontology &ontology);

}  // namespace revspam

#endif  // REVSPAM_ONTOLOGY_H_

#include "modal/modal.h"

#include <cstring>
#include <exception>
#include <string>

#include "modal/casebook.hpp"
#include "modal/formula.hpp"
#include "modal/proof.hpp"
#include "modal/semantics.hpp"

using modal::Formula;
using modal::KripkeModel;

struct modal_formula {
  Formula value;
};
struct modal_model {
  KripkeModel value;
};
struct modal_model_iter {
  modal::ModelStream stream;
};
struct modal_verdict {
  modal::Verdict value;
  modal_model model_handle;  // valid only for countermodels
};
struct modal_derivation {
  modal::Derivation value;
};
struct modal_check_report {
  modal::CheckReport value;
};
struct modal_casebook {
  std::string dir;
};
struct modal_case_outcome {
  modal::CaseOutcome value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

modal_status fail(modal_status status, const std::string& message) {
  set_error(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
modal_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const modal::ParseError& e) {
    return fail(MODAL_ERR_PARSE, e.what());
  } catch (const modal::ModelParseError& e) {
    return fail(MODAL_ERR_PARSE, e.what());
  } catch (const modal::ProofParseError& e) {
    return fail(MODAL_ERR_PARSE, e.what());
  } catch (const modal::WorldOutOfRange& e) {
    return fail(MODAL_ERR_WORLD_OUT_OF_RANGE, e.what());
  } catch (const modal::DiamondPresent& e) {
    return fail(MODAL_ERR_DIAMOND_PRESENT, e.what());
  } catch (const modal::TooManyVariables& e) {
    return fail(MODAL_ERR_TOO_MANY_VARIABLES, e.what());
  } catch (const modal::BoundTooLarge& e) {
    return fail(MODAL_ERR_BOUND_TOO_LARGE, e.what());
  } catch (const modal::UnknownCase& e) {
    return fail(MODAL_ERR_UNKNOWN_CASE, e.what());
  } catch (const modal::CasebookError& e) {
    return fail(MODAL_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MODAL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(MODAL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MODAL_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char** dup_string_array(const std::vector<std::string>& items) {
  char** out = new char*[items.empty() ? 1 : items.size()];
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = dup_string(items[i]);
  return out;
}

modal_status require(bool ok, const char* message) {
  return ok ? MODAL_OK : fail(MODAL_ERR_INVALID_ARGUMENT, message);
}

modal::Logic to_logic(modal_logic logic) {
  switch (logic) {
    case MODAL_LOGIC_K: return modal::Logic::K;
    case MODAL_LOGIC_T: return modal::Logic::T;
    case MODAL_LOGIC_S4: return modal::Logic::S4;
    case MODAL_LOGIC_S5: return modal::Logic::S5;
  }
  throw std::invalid_argument("bad modal_logic value");
}

modal::Justification::Kind to_axiom(modal_axiom tag) {
  switch (tag) {
    case MODAL_AXIOM_K: return modal::Justification::Kind::AxK;
    case MODAL_AXIOM_T: return modal::Justification::Kind::AxT;
    case MODAL_AXIOM_4: return modal::Justification::Kind::Ax4;
    case MODAL_AXIOM_S5: return modal::Justification::Kind::AxS5;
  }
  throw std::invalid_argument("bad modal_axiom value");
}

}  // namespace

extern "C" {

const char* modal_version(void) { return "0.1.0"; }

const char* modal_last_error(void) { return g_last_error.c_str(); }

void modal_string_free(char* s) { delete[] s; }

void modal_string_array_free(char** strings, size_t count) {
  if (!strings) return;
  for (size_t i = 0; i < count; ++i) delete[] strings[i];
  delete[] strings;
}

void modal_index_array_free(int* indices) { delete[] indices; }

/* ---- formulas ---------------------------------------------------------- */

modal_status modal_formula_parse(const char* text, modal_formula** out) {
  if (auto s = require(text && out, "text and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_formula{modal::parse_formula(text)};
    return MODAL_OK;
  });
}

modal_status modal_formula_print(const modal_formula* f, char** out) {
  if (auto s = require(f && out, "formula and out must be non-null")) return s;
  return guarded([&] {
    *out = dup_string(modal::print_formula(f->value));
    return MODAL_OK;
  });
}

modal_status modal_formula_desugar(const modal_formula* f, modal_formula** out) {
  if (auto s = require(f && out, "formula and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_formula{modal::desugar(f->value)};
    return MODAL_OK;
  });
}

modal_status modal_formula_atoms(const modal_formula* f, char*** names, size_t* count) {
  if (auto s = require(f && names && count, "formula, names and count must be non-null"))
    return s;
  return guarded([&] {
    auto atoms = modal::atoms_of(f->value);
    std::vector<std::string> items(atoms.begin(), atoms.end());
    *names = dup_string_array(items);
    *count = items.size();
    return MODAL_OK;
  });
}

modal_status modal_formula_box_subformulas(const modal_formula* f, char*** printed,
                                           size_t* count) {
  if (auto s = require(f && printed && count, "formula, printed and count must be non-null"))
    return s;
  return guarded([&] {
    std::vector<std::string> items;
    for (const Formula& g : modal::box_subformulas(f->value))
      items.push_back(modal::print_formula(g));
    *printed = dup_string_array(items);
    *count = items.size();
    return MODAL_OK;
  });
}

int modal_formula_equal(const modal_formula* a, const modal_formula* b) {
  if (!a || !b) return 0;
  return a->value == b->value ? 1 : 0;
}

void modal_formula_free(modal_formula* f) { delete f; }

/* ---- proof-theoretic helpers ------------------------------------------- */

modal_status modal_is_tautology_instance(const modal_formula* f, int* out) {
  if (auto s = require(f && out, "formula and out must be non-null")) return s;
  return guarded([&] {
    *out = modal::is_tautology_instance(f->value) ? 1 : 0;
    return MODAL_OK;
  });
}

modal_status modal_match_axiom_schema(modal_axiom tag, const modal_formula* f, int* matched,
                                      modal_formula** a_out, modal_formula** b_out) {
  if (auto s = require(f && matched, "formula and matched must be non-null")) return s;
  return guarded([&] {
    if (a_out) *a_out = nullptr;
    if (b_out) *b_out = nullptr;
    auto binding = modal::match_axiom_schema(to_axiom(tag), f->value);
    *matched = binding ? 1 : 0;
    if (binding) {
      if (a_out && binding->count("A")) *a_out = new modal_formula{binding->at("A")};
      if (b_out && binding->count("B")) *b_out = new modal_formula{binding->at("B")};
    }
    return MODAL_OK;
  });
}

/* ---- models ------------------------------------------------------------ */

modal_status modal_model_parse(const char* km_text, modal_model** out) {
  if (auto s = require(km_text && out, "text and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_model{modal::parse_model(km_text)};
    return MODAL_OK;
  });
}

modal_status modal_model_print(const modal_model* m, char** out) {
  if (auto s = require(m && out, "model and out must be non-null")) return s;
  return guarded([&] {
    *out = dup_string(modal::print_model(m->value));
    return MODAL_OK;
  });
}

int modal_model_world_count(const modal_model* m) { return m ? m->value.worlds() : 0; }

int modal_model_is_universal(const modal_model* m) {
  return m && m->value.is_universal() ? 1 : 0;
}

int modal_model_designated(const modal_model* m) {
  if (!m || !m->value.designated()) return -1;
  return *m->value.designated();
}

modal_status modal_model_relation(const modal_model* m, int** pairs, size_t* pair_count) {
  if (auto s = require(m && pairs && pair_count, "model, pairs and count must be non-null"))
    return s;
  return guarded([&] {
    auto rel = m->value.relation_pairs();
    int* flat = new int[rel.size() * 2 + 1];
    for (std::size_t i = 0; i < rel.size(); ++i) {
      flat[2 * i] = rel[i].first;
      flat[2 * i + 1] = rel[i].second;
    }
    *pairs = flat;
    *pair_count = rel.size();
    return MODAL_OK;
  });
}

modal_status modal_model_atoms(const modal_model* m, char*** names, size_t* count) {
  if (auto s = require(m && names && count, "model, names and count must be non-null"))
    return s;
  return guarded([&] {
    std::vector<std::string> items;
    for (const auto& [atom, worlds] : m->value.valuation()) items.push_back(atom);
    *names = dup_string_array(items);
    *count = items.size();
    return MODAL_OK;
  });
}

modal_status modal_model_atom_worlds(const modal_model* m, const char* atom, int** worlds,
                                     size_t* count) {
  if (auto s = require(m && atom && worlds && count, "all arguments must be non-null"))
    return s;
  return guarded([&] {
    auto it = m->value.valuation().find(atom);
    std::size_t n = (it == m->value.valuation().end()) ? 0 : it->second.size();
    int* flat = new int[n + 1];
    std::size_t i = 0;
    if (it != m->value.valuation().end())
      for (int w : it->second) flat[i++] = w;
    *worlds = flat;
    *count = n;
    return MODAL_OK;
  });
}

modal_status modal_model_eval(const modal_model* m, int world, const modal_formula* f,
                              int* out) {
  if (auto s = require(m && f && out, "model, formula and out must be non-null")) return s;
  return guarded([&] {
    *out = modal::eval(m->value, world, f->value) ? 1 : 0;
    return MODAL_OK;
  });
}

modal_status modal_model_holds_globally(const modal_model* m, const modal_formula* f,
                                        int* out) {
  if (auto s = require(m && f && out, "model, formula and out must be non-null")) return s;
  return guarded([&] {
    *out = modal::holds_globally(m->value, f->value) ? 1 : 0;
    return MODAL_OK;
  });
}

modal_status modal_model_check_frame(const modal_model* m, modal_logic logic,
                                     char*** violations, size_t* count) {
  if (auto s = require(m && violations && count, "model, violations and count must be non-null"))
    return s;
  return guarded([&] {
    std::vector<std::string> items;
    for (const auto& v : modal::check_frame(m->value, to_logic(logic)))
      items.push_back(modal::to_string(v));
    *violations = dup_string_array(items);
    *count = items.size();
    return MODAL_OK;
  });
}

void modal_model_free(modal_model* m) { delete m; }

/* ---- enumeration ------------------------------------------------------- */

modal_status modal_enumerate_models(const char* const* atoms, size_t atom_count,
                                    modal_logic logic, int worlds, modal_model_iter** out) {
  if (auto s = require(out && (atom_count == 0 || atoms), "atoms and out must be non-null"))
    return s;
  return guarded([&] {
    std::set<std::string> names;
    for (size_t i = 0; i < atom_count; ++i) names.insert(atoms[i]);
    *out = new modal_model_iter{modal::ModelStream(std::move(names), to_logic(logic), worlds)};
    return MODAL_OK;
  });
}

modal_status modal_model_iter_next(modal_model_iter* it, modal_model** out) {
  if (auto s = require(it && out, "iterator and out must be non-null")) return s;
  return guarded([&] {
    auto m = it->stream.next();
    *out = m ? new modal_model{std::move(*m)} : nullptr;
    return MODAL_OK;
  });
}

void modal_model_iter_free(modal_model_iter* it) { delete it; }

/* ---- decision procedure ------------------------------------------------ */

modal_status modal_decide(modal_logic logic, const modal_formula* const* globals,
                          size_t global_count, const modal_formula* const* locals,
                          size_t local_count, const modal_formula* goal, int max_worlds,
                          modal_verdict** out) {
  if (auto s = require(goal && out && (global_count == 0 || globals) &&
                           (local_count == 0 || locals),
                       "goal, out and any premise arrays must be non-null"))
    return s;
  return guarded([&] {
    std::vector<Formula> g, l;
    for (size_t i = 0; i < global_count; ++i) g.push_back(globals[i]->value);
    for (size_t i = 0; i < local_count; ++i) l.push_back(locals[i]->value);
    modal::DecideOptions opts;
    if (max_worlds > 0) opts.max_worlds = max_worlds;
    modal::Verdict v = modal::decide(to_logic(logic), g, l, goal->value, opts);
    auto* handle = new modal_verdict{std::move(v), {}};
    if (handle->value.model) handle->model_handle.value = *handle->value.model;
    *out = handle;
    return MODAL_OK;
  });
}

modal_verdict_kind modal_verdict_get_kind(const modal_verdict* v) {
  if (!v) return MODAL_VERDICT_VALID;
  switch (v->value.kind) {
    case modal::Verdict::Kind::Valid: return MODAL_VERDICT_VALID;
    case modal::Verdict::Kind::ValidUpToBound: return MODAL_VERDICT_VALID_UP_TO_BOUND;
    case modal::Verdict::Kind::Countermodel: return MODAL_VERDICT_COUNTERMODEL;
  }
  return MODAL_VERDICT_VALID;
}

int modal_verdict_bound(const modal_verdict* v) { return v ? v->value.bound : 0; }

const modal_model* modal_verdict_model(const modal_verdict* v) {
  if (!v || !v->value.model) return nullptr;
  return &v->model_handle;
}

int modal_verdict_world(const modal_verdict* v) { return v ? v->value.world : -1; }

void modal_verdict_free(modal_verdict* v) { delete v; }

/* ---- derivations ------------------------------------------------------- */

modal_status modal_derivation_parse(const char* mpf_text, modal_derivation** out) {
  if (auto s = require(mpf_text && out, "text and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_derivation{modal::parse_derivation(mpf_text)};
    return MODAL_OK;
  });
}

modal_status modal_derivation_check(const modal_derivation* d, modal_check_report** out) {
  if (auto s = require(d && out, "derivation and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_check_report{modal::check(d->value)};
    return MODAL_OK;
  });
}

int modal_report_accepted(const modal_check_report* r) {
  return r && r->value.accepted ? 1 : 0;
}

size_t modal_report_error_count(const modal_check_report* r) {
  return r ? r->value.errors.size() : 0;
}

const char* modal_report_error_label(const modal_check_report* r, size_t i) {
  if (!r || i >= r->value.errors.size()) return nullptr;
  return r->value.errors[i].label.c_str();
}

const char* modal_report_error_kind(const modal_check_report* r, size_t i) {
  if (!r || i >= r->value.errors.size()) return nullptr;
  return modal::to_string(r->value.errors[i].kind);
}

const char* modal_report_error_message(const modal_check_report* r, size_t i) {
  if (!r || i >= r->value.errors.size()) return nullptr;
  return r->value.errors[i].message.c_str();
}

size_t modal_report_warning_count(const modal_check_report* r) {
  return r ? r->value.warnings.size() : 0;
}

const char* modal_report_warning(const modal_check_report* r, size_t i) {
  if (!r || i >= r->value.warnings.size()) return nullptr;
  return r->value.warnings[i].c_str();
}

void modal_report_free(modal_check_report* r) { delete r; }

void modal_derivation_free(modal_derivation* d) { delete d; }

/* ---- casebook ---------------------------------------------------------- */

modal_status modal_casebook_open(const char* cases_dir, modal_casebook** out) {
  if (auto s = require(cases_dir && out, "cases_dir and out must be non-null")) return s;
  return guarded([&] {
    // Fail fast when the directory is unusable: probe the first payload.
    modal::read_text_file(std::string(cases_dir) + "/" +
                          modal::case_catalog().front().payload_file);
    *out = new modal_casebook{cases_dir};
    return MODAL_OK;
  });
}

size_t modal_casebook_count(const modal_casebook*) { return modal::case_catalog().size(); }

const char* modal_casebook_name(const modal_casebook*, size_t i) {
  const auto& catalog = modal::case_catalog();
  return i < catalog.size() ? catalog[i].name.c_str() : nullptr;
}

const char* modal_casebook_kind(const modal_casebook*, size_t i) {
  const auto& catalog = modal::case_catalog();
  return i < catalog.size() ? modal::to_string(catalog[i].kind) : nullptr;
}

const char* modal_casebook_summary(const modal_casebook*, size_t i) {
  const auto& catalog = modal::case_catalog();
  return i < catalog.size() ? catalog[i].summary.c_str() : nullptr;
}

const char* modal_casebook_narrative(const modal_casebook*, size_t i) {
  const auto& catalog = modal::case_catalog();
  return i < catalog.size() ? catalog[i].narrative.c_str() : nullptr;
}

modal_status modal_casebook_run(const modal_casebook* cb, const char* name,
                                modal_case_outcome** out) {
  if (auto s = require(cb && name && out, "casebook, name and out must be non-null")) return s;
  return guarded([&] {
    *out = new modal_case_outcome{modal::run_case(cb->dir, name)};
    return MODAL_OK;
  });
}

const char* modal_outcome_name(const modal_case_outcome* o) {
  return o ? o->value.name.c_str() : nullptr;
}

const char* modal_outcome_expected(const modal_case_outcome* o) {
  return o ? o->value.expected.c_str() : nullptr;
}

const char* modal_outcome_actual(const modal_case_outcome* o) {
  return o ? o->value.actual.c_str() : nullptr;
}

int modal_outcome_pass(const modal_case_outcome* o) { return o && o->value.pass ? 1 : 0; }

void modal_outcome_free(modal_case_outcome* o) { delete o; }

void modal_casebook_free(modal_casebook* cb) { delete cb; }

}  // extern "C"

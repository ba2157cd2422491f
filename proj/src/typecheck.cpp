#include "cap/typecheck.hpp"

#include "cap/errors.hpp"
#include "cap/parser.hpp"

namespace cap {

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::NotADatatype: return "NotADatatype";
    case TypeErrorKind::NotAFunction: return "NotAFunction";
    case TypeErrorKind::ArgumentMismatch: return "ArgumentMismatch";
    case TypeErrorKind::IncompatibleBranches: return "IncompatibleBranches";
    case TypeErrorKind::SortError: return "SortError";
    case TypeErrorKind::UnfoldFailure: return "UnfoldFailure";
    case TypeErrorKind::InvalidPattern: return "InvalidPattern";
  }
  return "?";
}

namespace {

TcResult err(TypeErrorKind kind, std::vector<int> path, std::string message) {
  TcResult r;
  r.error = TypeError{kind, std::move(path), std::move(message)};
  return r;
}

TcResult tcp_rec(const TypingContext& theta, const PatternRef& p, std::vector<int>& path) {
  switch (p->k) {
    case Pattern::K::Matchable: {
      auto it = theta.find(p->name);
      if (it == theta.end())
        return err(TypeErrorKind::UnboundVariable, path,
                   "matchable '" + p->name + "' has no annotation");
      TcResult r;
      r.type = it->second;
      return r;
    }
    case Pattern::K::Const: {
      TcResult r;
      r.type = mk_atom(p->name);
      return r;
    }
    case Pattern::K::Comp: {
      path.push_back(1);
      TcResult left = tcp_rec(theta, p->a, path);
      path.pop_back();
      if (!left.ok()) return left;
      path.push_back(2);
      TcResult right = tcp_rec(theta, p->b, path);
      path.pop_back();
      if (!right.ok()) return right;
      if (!is_datatype(left.type))
        return err(TypeErrorKind::NotADatatype, path,
                   "compound pattern head has non-datatype type " + render_type(left.type));
      TcResult r;
      r.type = mk_comp(left.type, right.type);
      return r;
    }
  }
  return err(TypeErrorKind::InvalidPattern, path, "malformed pattern");
}

}  // namespace

TcResult tcp(const TypingContext& theta, const PatternRef& p) {
  std::vector<int> path;
  return tcp_rec(theta, p, path);
}

namespace {

bool unfold_rec(TypeRef t, std::vector<std::pair<TypeRef, TypeRef>>& out, long& fuel) {
  if (--fuel <= 0) throw internal_error("unfold: fuel exhausted");
  if (t->kind == TypeKind::Arrow) {
    out.emplace_back(t->a, t->b);
    return true;
  }
  if (t->kind == TypeKind::Union) {
    for (TypeRef c : flatten_union(t))
      if (!unfold_rec(c, out, fuel)) return false;
    return true;
  }
  if (t->kind == TypeKind::Mu) return unfold_rec(unfold_mu(t), out, fuel);
  return false;
}

}  // namespace

std::optional<std::vector<std::pair<TypeRef, TypeRef>>> unfold(TypeRef a) {
  std::vector<std::pair<TypeRef, TypeRef>> out;
  long fuel = 65536 + static_cast<long>(type_size(a)) * 4096;
  if (!unfold_rec(a, out, fuel)) return std::nullopt;
  return out;
}

namespace {

TcResult tc_rec(const TypingContext& gamma, const TermRef& t, const Engine& engine,
                std::vector<int>& path) {
  switch (t->k) {
    case Term::K::Var: {
      auto it = gamma.find(t->name);
      if (it == gamma.end())
        return err(TypeErrorKind::UnboundVariable, path, "unbound variable '" + t->name + "'");
      TcResult r;
      r.type = it->second;
      return r;
    }
    case Term::K::Const: {
      TcResult r;
      r.type = mk_atom(t->name);
      return r;
    }
    case Term::K::Abs: {
      std::vector<TypedPattern> typed;
      std::vector<TypeRef> domains, codomains;
      for (size_t i = 0; i < t->branches.size(); ++i) {
        const Branch& br = t->branches[i];
        path.push_back(static_cast<int>(i + 1));
        TcResult pa = tcp(br.theta, br.pattern);
        if (!pa.ok()) {
          TcResult r = pa;
          std::vector<int> full = path;
          full.insert(full.end(), r.error->path.begin(), r.error->path.end());
          r.error->path = std::move(full);
          path.pop_back();
          return r;
        }
        TypingContext extended = gamma;
        for (const auto& [x, ty] : br.theta) extended[x] = ty;
        TcResult body = tc_rec(extended, br.body, engine, path);
        path.pop_back();
        if (!body.ok()) return body;
        typed.push_back(TypedPattern{br.pattern, br.theta, pa.type});
        domains.push_back(pa.type);
        codomains.push_back(body.type);
      }
      for (size_t i = 0; i < typed.size(); ++i)
        for (size_t j = i + 1; j < typed.size(); ++j)
          if (!comp(typed[i], typed[j], engine))
            return err(TypeErrorKind::IncompatibleBranches, path,
                       "branch " + std::to_string(i + 1) + " (" +
                           render_pattern(typed[i].pattern) + " : " +
                           render_type(typed[i].ty) + ") is incompatible with branch " +
                           std::to_string(j + 1) + " (" + render_pattern(typed[j].pattern) +
                           " : " + render_type(typed[j].ty) + ")");
      TcResult r;
      r.type = mk_arrow(union_flat_dedup(domains), union_flat_dedup(codomains));
      return r;
    }
    case Term::K::App: {
      path.push_back(1);
      TcResult fn = tc_rec(gamma, t->fn, engine, path);
      path.pop_back();
      if (!fn.ok()) return fn;
      path.push_back(2);
      TcResult arg = tc_rec(gamma, t->arg, engine, path);
      path.pop_back();
      if (!arg.ok()) return arg;
      if (is_datatype(fn.type)) {
        TcResult r;
        r.type = mk_comp(fn.type, arg.type);
        return r;
      }
      auto arrows = unfold(fn.type);
      if (!arrows) {
        std::vector<int> at = path;
        at.push_back(1);
        return err(TypeErrorKind::NotAFunction, std::move(at),
                   "type " + render_type(fn.type) +
                       " is neither a datatype nor a union of arrows");
      }
      std::vector<TypeRef> results;
      for (size_t i = 0; i < arrows->size(); ++i) {
        if (!engine.subtype(arg.type, (*arrows)[i].first)) {
          std::vector<int> at = path;
          at.push_back(2);
          return err(TypeErrorKind::ArgumentMismatch, std::move(at),
                     "argument type " + render_type(arg.type) +
                         " is not a subtype of domain component " + std::to_string(i + 1) +
                         " (" + render_type((*arrows)[i].first) + ")");
        }
        results.push_back((*arrows)[i].second);
      }
      TcResult r;
      r.type = union_flat_dedup(results);
      return r;
    }
  }
  return err(TypeErrorKind::InvalidPattern, path, "malformed term");
}

}  // namespace

TcResult tc(const TypingContext& gamma, const TermRef& t, const Engine& engine) {
  std::vector<int> path;
  return tc_rec(gamma, t, engine, path);
}

std::optional<TypeError> check_sort(TypeRef a) {
  if (!a->is_closed())
    return TypeError{TypeErrorKind::SortError, {}, "type has free variables: " + render_type(a)};
  if (!is_well_sorted(a))
    return TypeError{TypeErrorKind::SortError, {}, "ill-sorted type: " + render_type(a)};
  if (!is_contractive(a))
    return TypeError{TypeErrorKind::SortError, {}, "non-contractive type: " + render_type(a)};
  return std::nullopt;
}

namespace {

std::optional<TypeError> validate_rec(const TermRef& t, std::vector<int>& path) {
  switch (t->k) {
    case Term::K::Var:
    case Term::K::Const:
      return std::nullopt;
    case Term::K::App: {
      path.push_back(1);
      auto e = validate_rec(t->fn, path);
      path.pop_back();
      if (e) return e;
      path.push_back(2);
      e = validate_rec(t->arg, path);
      path.pop_back();
      return e;
    }
    case Term::K::Abs: {
      for (size_t i = 0; i < t->branches.size(); ++i) {
        const Branch& br = t->branches[i];
        path.push_back(static_cast<int>(i + 1));
        if (!is_linear(br.pattern)) {
          TypeError e{TypeErrorKind::InvalidPattern, path,
                      "non-linear pattern " + render_pattern(br.pattern)};
          path.pop_back();
          return e;
        }
        std::set<std::string> fm = free_matchables(br.pattern);
        std::set<std::string> dom;
        for (const auto& [x, ty] : br.theta) {
          dom.insert(x);
          if (auto se = check_sort(ty)) {
            TypeError e{se->kind, path, "annotation of '" + x + "': " + se->message};
            path.pop_back();
            return e;
          }
        }
        if (fm != dom) {
          TypeError e{TypeErrorKind::InvalidPattern, path,
                      "context domain differs from the matchables of " +
                          render_pattern(br.pattern)};
          path.pop_back();
          return e;
        }
        auto e = validate_rec(br.body, path);
        path.pop_back();
        if (e) return e;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TypeError> validate(const TermRef& t) {
  std::vector<int> path;
  return validate_rec(t, path);
}

}  // namespace cap

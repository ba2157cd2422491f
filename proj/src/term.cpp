#include "cap/term.hpp"

#include <algorithm>

#include "cap/errors.hpp"

namespace cap {

PatternRef pat_matchable(const std::string& name) {
  auto p = std::make_shared<Pattern>();
  p->k = Pattern::K::Matchable;
  p->name = name;
  return p;
}
PatternRef pat_const(const std::string& name) {
  auto p = std::make_shared<Pattern>();
  p->k = Pattern::K::Const;
  p->name = name;
  return p;
}
PatternRef pat_comp(PatternRef l, PatternRef r) {
  auto p = std::make_shared<Pattern>();
  p->k = Pattern::K::Comp;
  p->a = std::move(l);
  p->b = std::move(r);
  return p;
}

TermRef term_var(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->k = Term::K::Var;
  t->name = name;
  return t;
}
TermRef term_const(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->k = Term::K::Const;
  t->name = name;
  return t;
}
TermRef term_app(TermRef fn, TermRef arg) {
  auto t = std::make_shared<Term>();
  t->k = Term::K::App;
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  return t;
}
TermRef term_abs(std::vector<Branch> branches) {
  if (branches.empty()) throw internal_error("abstraction with no branches");
  auto t = std::make_shared<Term>();
  t->k = Term::K::Abs;
  t->branches = std::move(branches);
  return t;
}

bool pattern_equal(const PatternRef& p, const PatternRef& q) {
  if (p->k != q->k) return false;
  switch (p->k) {
    case Pattern::K::Matchable:
    case Pattern::K::Const:
      return p->name == q->name;
    case Pattern::K::Comp:
      return pattern_equal(p->a, q->a) && pattern_equal(p->b, q->b);
  }
  return false;
}

bool term_equal(const TermRef& s, const TermRef& t) {
  if (s->k != t->k) return false;
  switch (s->k) {
    case Term::K::Var:
    case Term::K::Const:
      return s->name == t->name;
    case Term::K::App:
      return term_equal(s->fn, t->fn) && term_equal(s->arg, t->arg);
    case Term::K::Abs: {
      if (s->branches.size() != t->branches.size()) return false;
      for (size_t i = 0; i < s->branches.size(); ++i) {
        const Branch& a = s->branches[i];
        const Branch& b = t->branches[i];
        if (!pattern_equal(a.pattern, b.pattern) || a.theta != b.theta ||
            !term_equal(a.body, b.body))
          return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

void fm_rec(const PatternRef& p, std::set<std::string>& out) {
  switch (p->k) {
    case Pattern::K::Matchable:
      out.insert(p->name);
      break;
    case Pattern::K::Const:
      break;
    case Pattern::K::Comp:
      fm_rec(p->a, out);
      fm_rec(p->b, out);
      break;
  }
}

void fv_rec(const TermRef& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->k) {
    case Term::K::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case Term::K::Const:
      break;
    case Term::K::App:
      fv_rec(t->fn, bound, out);
      fv_rec(t->arg, bound, out);
      break;
    case Term::K::Abs:
      for (const Branch& br : t->branches) {
        std::set<std::string> fm = free_matchables(br.pattern);
        std::vector<std::string> added;
        for (const std::string& x : fm)
          if (bound.insert(x).second) added.push_back(x);
        fv_rec(br.body, bound, out);
        for (const std::string& x : added) bound.erase(x);
      }
      break;
  }
}

}  // namespace

std::set<std::string> free_matchables(const PatternRef& p) {
  std::set<std::string> out;
  fm_rec(p, out);
  return out;
}

std::set<std::string> free_vars(const TermRef& t) {
  std::set<std::string> bound, out;
  fv_rec(t, bound, out);
  return out;
}

bool is_linear(const PatternRef& p) {
  std::vector<std::string> seen;
  std::vector<PatternRef> stack{p};
  while (!stack.empty()) {
    PatternRef cur = stack.back();
    stack.pop_back();
    switch (cur->k) {
      case Pattern::K::Matchable:
        if (std::find(seen.begin(), seen.end(), cur->name) != seen.end()) return false;
        seen.push_back(cur->name);
        break;
      case Pattern::K::Const:
        break;
      case Pattern::K::Comp:
        stack.push_back(cur->b);
        stack.push_back(cur->a);
        break;
    }
  }
  return true;
}

namespace {

PatternRef rename_matchables(const PatternRef& p,
                             const std::map<std::string, std::string>& ren) {
  switch (p->k) {
    case Pattern::K::Matchable: {
      auto it = ren.find(p->name);
      return it == ren.end() ? p : pat_matchable(it->second);
    }
    case Pattern::K::Const:
      return p;
    case Pattern::K::Comp:
      return pat_comp(rename_matchables(p->a, ren), rename_matchables(p->b, ren));
  }
  return p;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  do {
    n += '\'';
  } while (avoid.count(n));
  return n;
}

TermRef subst_rec(const Substitution& s, const TermRef& t) {
  switch (t->k) {
    case Term::K::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case Term::K::Const:
      return t;
    case Term::K::App:
      return term_app(subst_rec(s, t->fn), subst_rec(s, t->arg));
    case Term::K::Abs: {
      std::vector<Branch> out;
      out.reserve(t->branches.size());
      for (const Branch& br : t->branches) {
        std::set<std::string> fm = free_matchables(br.pattern);
        Substitution inner;
        std::set<std::string> range_fv;
        for (const auto& [x, u] : s) {
          if (fm.count(x)) continue;  // matchables shadow
          inner.emplace(x, u);
        }
        std::set<std::string> body_fv = free_vars(br.body);
        bool relevant = false;
        for (const auto& [x, u] : inner)
          if (body_fv.count(x)) {
            relevant = true;
            for (const std::string& v : free_vars(u)) range_fv.insert(v);
          }
        if (!relevant) {
          out.push_back(br);
          continue;
        }
        // Rename matchables captured by the substitution range, adjusting the
        // pattern, theta and body together.
        std::map<std::string, std::string> ren;
        std::set<std::string> avoid = range_fv;
        avoid.insert(body_fv.begin(), body_fv.end());
        avoid.insert(fm.begin(), fm.end());
        for (const std::string& m : fm)
          if (range_fv.count(m)) {
            std::string f = fresh_name(m, avoid);
            avoid.insert(f);
            ren.emplace(m, f);
          }
        PatternRef pat = br.pattern;
        TypingContext theta = br.theta;
        TermRef body = br.body;
        if (!ren.empty()) {
          pat = rename_matchables(pat, ren);
          TypingContext theta2;
          for (const auto& [x, ty] : theta) {
            auto it = ren.find(x);
            theta2.emplace(it == ren.end() ? x : it->second, ty);
          }
          theta = std::move(theta2);
          Substitution ren_subst;
          for (const auto& [x, f] : ren) ren_subst.emplace(x, term_var(f));
          body = subst_rec(ren_subst, body);
        }
        out.push_back(Branch{pat, theta, subst_rec(inner, body)});
      }
      return term_abs(std::move(out));
    }
  }
  return t;
}

}  // namespace

TermRef apply_subst(const Substitution& s, const TermRef& t) {
  if (s.empty()) return t;
  return subst_rec(s, t);
}

bool subsumes(const PatternRef& p, const PatternRef& q) {
  // With linear p, a greedy structural walk decides existence of sigma with
  // sigma p = q.
  switch (p->k) {
    case Pattern::K::Matchable:
      return true;
    case Pattern::K::Const:
      return q->k == Pattern::K::Const && q->name == p->name;
    case Pattern::K::Comp:
      return q->k == Pattern::K::Comp && subsumes(p->a, q->a) && subsumes(p->b, q->b);
  }
  return false;
}

namespace {
void positions_rec(const PatternRef& p, const Position& here, std::set<Position>& out) {
  out.insert(here);
  if (p->k == Pattern::K::Comp) {
    positions_rec(p->a, here + '1', out);
    positions_rec(p->b, here + '2', out);
  }
}
}  // namespace

std::set<Position> positions(const PatternRef& p) {
  std::set<Position> out;
  positions_rec(p, "", out);
  return out;
}

PatternRef subpattern_at(const PatternRef& p, const Position& pi) {
  PatternRef cur = p;
  for (char c : pi) {
    if (cur->k != Pattern::K::Comp || (c != '1' && c != '2'))
      throw undefined_position("no subpattern at position " + (pi.empty() ? "e" : pi));
    cur = c == '1' ? cur->a : cur->b;
  }
  return cur;
}

}  // namespace cap

#pragma once

// Copies of scenarios/*.grc; test_workspace_cli checks that they agree.

#include <map>
#include <string>

namespace grc {

inline const std::map<std::string, std::string>& shipped_workspaces() {
  static const std::map<std::string, std::string> files{
      {"cubic.grc", R"grc(# Z-graded F_2[X]/(X^3), deg X = 1, with its identity and the truncation to F_2[X]/(X^2)
modulus 2
group Z 0
group T
epi psi : Z -> T
  image
end
ring C over Z
  component (0) gens 1
  component (1) gens 1
  component (2) gens 1
  mult (0) 0 (0) 0 = 1
  mult (0) 0 (1) 0 = 1
  mult (0) 0 (2) 0 = 1
  mult (1) 0 (1) 0 = 1
  one 1
end
ring Q over Z
  component (0) gens 1
  component (1) gens 1
  mult (0) 0 (0) 0 = 1
  mult (0) 0 (1) 0 = 1
  one 1
end
hom id : C -> C
  map (0) 0 = 1
  map (1) 0 = 1
  map (2) 0 = 1
end
hom trunc : C -> Q
  map (0) 0 = 1
  map (1) 0 = 1
end
)grc"},
      {"d25E.grc", R"grc(# F_2[X]/(X^3) -> F_2[X]/(X^2), ungraded (R, S, h) and Z/3-graded with deg X = 1 (Rg, Sg, hg)
modulus 2
group T
group C3 3
epi psi : C3 -> T
  image
end
ring R over T
  component () gens 3
  mult () 0 () 0 = 1 0 0
  mult () 0 () 1 = 0 1 0
  mult () 0 () 2 = 0 0 1
  mult () 1 () 1 = 0 0 1
  one 1 0 0
end
ring S over T
  component () gens 2
  mult () 0 () 0 = 1 0
  mult () 0 () 1 = 0 1
  one 1 0
end
hom h : R -> S
  map () 0 = 1 0
  map () 1 = 0 1
end
# R/(X^2)
module Q over R
  component () gens 2
  action () 1 () 0 = 0 1
end
ring Rg over C3
  component (0) gens 1
  component (1) gens 1
  component (2) gens 1
  mult (0) 0 (0) 0 = 1
  mult (0) 0 (1) 0 = 1
  mult (0) 0 (2) 0 = 1
  mult (1) 0 (1) 0 = 1
  one 1
end
ring Sg over C3
  component (0) gens 1
  component (1) gens 1
  mult (0) 0 (0) 0 = 1
  mult (0) 0 (1) 0 = 1
  one 1
end
hom hg : Rg -> Sg
  map (0) 0 = 1
  map (1) 0 = 1
end
module Qg over Rg
  component (0) gens 1
  component (1) gens 1
  action (1) 0 (0) 0 = 1
end
)grc"},
      {"d40C.grc", R"grc(# Z/4 -> Z/2 with M = h_*(Z/2) and N = Z/4
modulus 4
group T
ring R over T
  component () gens 1
  mult () 0 () 0 = 1
  one 1
end
ring S over T
  component () gens 1
  relation () 2
  mult () 0 () 0 = 1
  one 1
end
hom h : R -> S
  map () 0 = 1
end
module M over R
  component () gens 1
  relation () 2
end
module N over R
  component () gens 1
end
)grc"},
      {"frobenius.grc", R"grc(# F_2 -> F_2[t]/(t^2), ungraded (K, A, f) and Z/2-graded with deg t = 1 (Kg, Ag, fg)
modulus 2
group T
group C2 2
epi psi : C2 -> T
  image
end
ring K over T
  component () gens 1
  mult () 0 () 0 = 1
  one 1
end
ring A over T
  component () gens 2
  mult () 0 () 0 = 1 0
  mult () 0 () 1 = 0 1
  one 1 0
end
hom f : K -> A
  map () 0 = 1 0
end
ring Kg over C2
  component (0) gens 1
  mult (0) 0 (0) 0 = 1
  one 1
end
ring Ag over C2
  component (0) gens 1
  component (1) gens 1
  mult (0) 0 (0) 0 = 1
  mult (0) 0 (1) 0 = 1
  one 1
end
hom fg : Kg -> Ag
  map (0) 0 = 1
end
)grc"},
  };
  return files;
}

}  // namespace grc

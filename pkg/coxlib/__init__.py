# coxlib - exact Cartan matrices of Coxeter polytopes and their reflection groups

from .objective import ConvexMilProblem, objective_misvm, project_ball
from .subgradient import SubgradientRun, projected_subgradient
from .qp import solve_mil_qp, solve_multiclass_qp
from .misvm import solve_convex, train_binary_misvm_dc, train_oneclass_misvm, train_reduced
from .multiclass import objective_multiclass_svm, train_multiclass_svm_direct

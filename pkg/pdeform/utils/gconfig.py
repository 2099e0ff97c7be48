# Module level defaults, overridden by scenario [defaults] blocks and CLI flags.

# exponent window D for cohomology bases
window = 3
# windows compared by the sufficiency audit are D and D + audit_step
audit_step = 2
# coboundary sources use the window 2 * D + source_margin
source_margin = 3
# default truncation order for scenario rings
order = 2
# seed for the lift-choice perturbation
seed = 0
# number of perturbed monomials per lifted datum entry
perturbation_terms = 2
# joblib workers for matrix assembly
njobs = 1
log_format = '%(asctime)s %(name)s %(levelname)s %(message)s'

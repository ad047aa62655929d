from discordlab.config import Config
from discordlab.models.reports import Convention
from discordlab.services.file_service import StateFileService, parse_dims
from discordlab.services.hierarchy_service import HierarchyService
from discordlab.utils.formatting import render

INEQUALITIES = ('eq3', 'eq4', 'd1', 'erratum')


def register(subparsers, parents):
    parser = subparsers.add_parser('check', parents=parents,
                                   help='Evaluate one discord/entanglement relation on a state')
    parser.add_argument('state', help='StateFile path')
    parser.add_argument('--inequality', required=True, choices=INEQUALITIES)
    parser.add_argument('--convention', default=Convention.TRACE.value,
                        choices=[c.value for c in Convention],
                        help='Negativity convention (eq4 always uses witness)')
    parser.add_argument('--repartition', type=parse_dims, default=None, metavar='MxN')
    parser.add_argument('--normalized', action='store_true',
                        help='Use m/(m-1) D2 on the left of eq3')
    parser.set_defaults(handler=cmd_check)


def cmd_check(args) -> int:
    """A violated relation is a result, not an error: exit code stays 0"""
    rho = StateFileService.load_state(args.state, args.repartition)
    convention = Convention(args.convention)
    if args.inequality == 'eq3':
        report = HierarchyService.check_eq3(rho, convention, normalized=args.normalized)
    elif args.inequality == 'eq4':
        report = HierarchyService.check_eq4(rho)
    elif args.inequality == 'd1':
        report = HierarchyService.check_d1(rho, convention)
    else:
        report = HierarchyService.check_erratum(rho, convention)
    result = report.to_dict()
    result['seed'] = Config.DEFAULT_SEED
    print(render(result, Config.DEFAULT_FORMAT))
    return 0

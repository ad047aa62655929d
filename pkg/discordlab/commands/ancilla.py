from discordlab.config import Config
from discordlab.services.file_service import StateFileService
from discordlab.services.hierarchy_service import HierarchyService
from discordlab.utils.formatting import render


def register(subparsers, parents):
    parser = subparsers.add_parser('ancilla', parents=parents,
                                   help='Append a maximally mixed ancilla to B and compare measures')
    parser.add_argument('state', help='StateFile path')
    parser.add_argument('--k', type=int, required=True, help='Ancilla dimension')
    parser.set_defaults(handler=cmd_ancilla)


def cmd_ancilla(args) -> int:
    rho = StateFileService.load_state(args.state)
    report = HierarchyService.ancilla_demo(rho, args.k)
    print(render(report.to_dict(), Config.DEFAULT_FORMAT))
    return 0

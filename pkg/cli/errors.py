EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VERIFICATION = 2
EXIT_PARSE = 3
EXIT_NOT_CONVERGED = 4


class CommandError(Exception):
    """Ошибка команды с кодом выхода (аналог HTTPException для CLI)"""

    def __init__(self, exit_code: int, detail: str):
        self.exit_code = exit_code
        self.detail = detail
        super().__init__(detail)

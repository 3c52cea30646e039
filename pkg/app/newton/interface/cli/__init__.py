# newton.interface.cli 패키지 초기화
